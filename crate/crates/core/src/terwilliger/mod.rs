//! Terwilliger algebra `T(x)` and the decomposition of the standard module
//! into irreducible `T(x)`-modules.
//!
//! `T(x)` is generated by the associate matrices and the dual idempotents
//! `E*_i(x)`. Because it contains every `E*_i`, all the work here is done in
//! block coordinates: the vertex set is split into subconstituents
//! `{ y : xy ∈ R_i }` and matrices are handled block by block.

mod closure;
mod decompose;
mod profile;

pub use closure::{algebra_closure, AlgebraBasis, BlockElement};
pub use decompose::{decompose, Decomposition, IsotypicSummary};
pub use profile::{module_profile, TModuleSummary};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scheme::Scheme;
use crate::spectra::EigenData;
use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TerwilligerError {
    #[error("vertex {x} is out of range for a scheme on {n} vertices")]
    VertexOutOfRange { x: usize, n: usize },
    #[error("algebra closure still growing after {limit} rounds (dimension {dim})")]
    ClosureNotReached { limit: usize, dim: usize },
    #[error("T-module certificate failed at base point {base_point}: residual {residual:e}")]
    ResidualTooLarge { base_point: usize, residual: f64 },
    #[error("could not split a {dim}-dimensional subspace at base point {base_point}: {detail}")]
    IrreducibilitySplitFailed { base_point: usize, dim: usize, detail: String },
    #[error("no primitive idempotent acts nontrivially on a module at base point {base_point}")]
    EmptyProfile { base_point: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl TerwilligerError {
    pub fn is_numerical(&self) -> bool {
        !matches!(self, TerwilligerError::VertexOutOfRange { .. })
    }
}

/// Which base points the dual-thin test visits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasePoints {
    /// Every vertex.
    #[default]
    All,
    /// Only vertex 0. Valid when the caller asserts that the automorphism
    /// group is transitive on vertices (one orbit).
    AssumeTransitive,
}

/// Seed used for the generic central and centralizer elements.
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Clone, Debug)]
pub struct TerwilligerConfig {
    pub tol: Tolerances,
    pub seed: u64,
    /// Closure round limit; `None` means `2 * (D + 1)`.
    pub closure_rounds: Option<usize>,
    /// Extra attempts with fresh coefficients when a generic element fails
    /// to separate.
    pub retries: usize,
    pub base_points: BasePoints,
}

impl Default for TerwilligerConfig {
    fn default() -> Self {
        Self { tol: Tolerances::default(), seed: DEFAULT_SEED, closure_rounds: None, retries: 4, base_points: BasePoints::All }
    }
}

/// The dual idempotents `E*_0(x), ..., E*_D(x)` stored as subconstituents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIdempotents {
    pub base_point: usize,
    /// `class_of[y]` is the class of the pair `xy`.
    pub class_of: Vec<usize>,
    /// `blocks[i]` lists (ascending) the vertices `y` with `xy ∈ R_i`.
    pub blocks: Vec<Vec<usize>>,
}

impl DualIdempotents {
    pub fn classes(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    /// The diagonal 0/1 matrix `E*_i`.
    pub fn matrix(&self, i: usize) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |y, z| if y == z && self.class_of[y] == i { 1.0 } else { 0.0 })
    }

    /// `E*_i` as an exact integer matrix.
    pub fn matrix_exact(&self, i: usize) -> DMatrix<i64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |y, z| i64::from(y == z && self.class_of[y] == i))
    }

    pub fn trace(&self, i: usize) -> usize {
        self.blocks[i].len()
    }

    /// `E*_i m`: rows outside subconstituent `i` zeroed.
    pub fn apply(&self, i: usize, m: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| if self.class_of[r] == i { m[(r, c)] } else { 0.0 })
    }
}

pub fn dual_idempotents(scheme: &Scheme, x: usize) -> Result<DualIdempotents, TerwilligerError> {
    if x >= scheme.n() {
        return Err(TerwilligerError::VertexOutOfRange { x, n: scheme.n() });
    }
    let class_of = scheme.row(x).to_vec();
    let mut blocks = vec![Vec::new(); scheme.classes() + 1];
    for (y, &c) in class_of.iter().enumerate() {
        blocks[c].push(y);
    }
    Ok(DualIdempotents { base_point: x, class_of, blocks })
}

/// Location of a module with `dim E_i W >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualThinWitness {
    pub base_point: usize,
    pub module: usize,
    pub idempotent: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct DualThinReport {
    pub dual_thin: bool,
    pub witness: Option<DualThinWitness>,
    pub base_points: BasePoints,
    /// One decomposition per visited base point, in base-point order.
    pub decompositions: Vec<Decomposition>,
}

/// Decomposes `V` at every base point (or at vertex 0 under
/// [`BasePoints::AssumeTransitive`]) and reports whether every irreducible
/// module is dual thin.
pub fn is_dual_thin(scheme: &Scheme, eigen: &EigenData, config: &TerwilligerConfig) -> Result<DualThinReport, TerwilligerError> {
    let points: Vec<usize> = match config.base_points {
        BasePoints::All => (0..scheme.n()).collect(),
        BasePoints::AssumeTransitive => vec![0],
    };
    let decompositions = points
        .into_par_iter()
        .map(|x| decompose(scheme, eigen, x, config))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = decompositions.iter().find_map(|dec| {
        dec.modules.iter().enumerate().find_map(|(module, w)| {
            w.e_ranks.iter().enumerate().find(|(_, &r)| r >= 2).map(|(idempotent, &rank)| DualThinWitness {
                base_point: dec.base_point,
                module,
                idempotent,
                rank,
            })
        })
    });
    Ok(DualThinReport { dual_thin: witness.is_none(), witness, base_points: config.base_points, decompositions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{complete, cycle};

    #[test]
    fn k4_dual_idempotents() {
        let d = dual_idempotents(&complete(4).unwrap(), 0).unwrap();
        assert_eq!(d.matrix_exact(0), DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1i64, 0, 0, 0])));
        assert_eq!(d.trace(1), 3);
    }

    #[test]
    fn pentagon_second_subconstituent() {
        let d = dual_idempotents(&cycle(5).unwrap(), 0).unwrap();
        assert_eq!(d.blocks[2], vec![2, 3]);
        let diag: Vec<i64> = (0..5).map(|y| d.matrix_exact(2)[(y, y)]).collect();
        assert_eq!(diag, vec![0, 0, 1, 1, 0]);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            dual_idempotents(&cycle(5).unwrap(), 5),
            Err(TerwilligerError::VertexOutOfRange { x: 5, n: 5 })
        );
    }

    #[test]
    fn dual_idempotents_are_orthogonal_idempotents() {
        let s = cycle(7).unwrap();
        for x in 0..7 {
            let d = dual_idempotents(&s, x).unwrap();
            let mut sum = DMatrix::<i64>::zeros(7, 7);
            for i in 0..=d.classes() {
                let ei = d.matrix_exact(i);
                sum += &ei;
                assert_eq!(d.trace(i), s.valencies()[i]);
                for j in 0..=d.classes() {
                    let expected = if i == j { ei.clone() } else { DMatrix::zeros(7, 7) };
                    assert_eq!(&ei * d.matrix_exact(j), expected);
                }
            }
            assert_eq!(sum, DMatrix::identity(7, 7));
        }
    }
}
