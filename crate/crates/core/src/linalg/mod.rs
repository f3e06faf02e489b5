//! Dense linear algebra used across the crate.
//!
//! Floating-point work uses [`nalgebra::DMatrix`]; symmetric eigenproblems go
//! through the cyclic Jacobi solver in [`jacobi`]. Exact work (eigenmatrices
//! of parameter-only families) uses [`rational::RationalMatrix`].

pub mod dense;
pub mod jacobi;
pub mod rational;

pub use dense::{max_abs, nullspace, orthonormal_range, rank};
pub use jacobi::{symmetric_eigen, SymmetricEigen};
pub use rational::RationalMatrix;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NotConverged { sweeps: usize, off: f64 },
    #[error("matrix is singular")]
    Singular,
}
