//! Symmetric association schemes: construction, Bose–Mesner eigenstructure,
//! Krein parameters, Terwilliger-algebra module decompositions, and instance
//! checks of multiplicity inequalities for dual-thin Q-polynomial schemes.
//!
//! The crate is organized bottom-up:
//!
//! - [`scheme`] builds and validates schemes (class tables, intersection
//!   numbers, named families, the text format, exact Johnson parameters).
//! - [`spectra`] computes primitive idempotents, eigenmatrices, Krein
//!   parameters and the P-/Q-polynomial orderings.
//! - [`terwilliger`] decomposes the standard module into irreducible
//!   T(x)-modules with residual certificates and profiles each module.
//! - [`theorems`] turns all of the above into structured verdicts.
//! - [`cli`] is the command-line front end.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod scheme;
pub mod spectra;
pub mod terwilliger;
pub mod theorems;
pub mod tolerance;

pub use error::{Error, Result};
pub use scheme::{Family, Scheme, SchemeParameters};
pub use spectra::{EigenData, KreinTensor, PStructure, QStructure};
pub use terwilliger::{Decomposition, DualIdempotents, TModuleSummary};
pub use theorems::{CheckId, CheckReport, Verdict};
pub use tolerance::Tolerances;
