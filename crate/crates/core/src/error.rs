use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scheme::SchemeError;
use crate::spectra::SpectraError;
use crate::terwilliger::TerwilligerError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Terwilliger(#[from] TerwilligerError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True when the failure is a numerical certificate (residual, separation,
    /// convergence) rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Scheme(_) | Error::Io { .. } => false,
            Error::Spectra(e) => e.is_numerical(),
            Error::Terwilliger(e) => e.is_numerical(),
            Error::Linalg(_) => true,
        }
    }
}
