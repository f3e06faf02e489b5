//! Linear basis of `T(x)` by closure under block generators.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::{DualIdempotents, TerwilligerConfig, TerwilligerError};
use crate::scheme::Scheme;

/// A candidate is new when its component orthogonal to the current basis
/// exceeds this fraction of its scale (`|g| |X|` for a product `g X`).
const INDEPENDENCE_RATIO: f64 = 1e-8;

/// A basis element supported on one block `E*_row T E*_col`, stored as a
/// `k_row x k_col` matrix.
#[derive(Clone, Debug)]
pub struct BlockElement {
    pub row: usize,
    pub col: usize,
    pub matrix: DMatrix<f64>,
}

/// Basis of `T(x)`, orthonormal for the trace inner product
/// `<X, Y> = tr(X Y^T)`, with every element supported on a single block.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub blocks: Vec<Vec<usize>>,
    pub elements: Vec<BlockElement>,
    /// Rounds of left multiplication performed before the span stopped
    /// growing.
    pub rounds: usize,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Element `idx` as an `n x n` matrix.
    pub fn to_full(&self, idx: usize) -> DMatrix<f64> {
        let e = &self.elements[idx];
        let mut full = DMatrix::zeros(self.n(), self.n());
        for (r, &y) in self.blocks[e.row].iter().enumerate() {
            for (c, &z) in self.blocks[e.col].iter().enumerate() {
                full[(y, z)] = e.matrix[(r, c)];
            }
        }
        full
    }

    /// `(row, col)` blocks that carry at least one basis element.
    pub fn diagonal_elements(&self) -> impl Iterator<Item = (usize, &BlockElement)> {
        self.elements.iter().enumerate().filter(|(_, e)| e.row == e.col)
    }
}

/// `rows x cols` submatrix of `A_i` between two subconstituents.
pub(crate) fn block_of(scheme: &Scheme, rows: &[usize], cols: &[usize], class: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| if scheme.class_of(rows[r], cols[c]) == class { 1.0 } else { 0.0 })
}

/// Spans `T(x)` by repeatedly left-multiplying by the block generators
/// `E*_a A_i E*_b`, starting from the generators themselves.
///
/// Every word in `A_0..A_D, E*_0..E*_D` is a sum of products of block
/// generators, so the span is closed once a round adds nothing. Each round
/// extends the word length by one block generator.
pub fn algebra_closure(
    scheme: &Scheme,
    duals: &DualIdempotents,
    config: &TerwilligerConfig,
) -> Result<AlgebraBasis, TerwilligerError> {
    let size = duals.blocks.len();
    let limit = config.closure_rounds.unwrap_or(2 * size);

    // generators[b] = nonzero (a, E*_a A_i E*_b)
    let mut generators: Vec<Vec<(usize, DMatrix<f64>)>> = vec![Vec::new(); size];
    for a in 0..size {
        for b in 0..size {
            for i in 0..size {
                let g = block_of(scheme, &duals.blocks[a], &duals.blocks[b], i);
                if g.iter().any(|&v| v != 0.0) {
                    generators[b].push((a, g));
                }
            }
        }
    }

    let mut basis = AlgebraBasis { blocks: duals.blocks.clone(), elements: Vec::new(), rounds: 0 };
    let mut by_block: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut frontier = Vec::new();
    for (b, gens) in generators.iter().enumerate() {
        for (a, g) in gens {
            if let Some(idx) = try_add(&mut basis, &mut by_block, *a, b, g.clone(), g.norm()) {
                frontier.push(idx);
            }
        }
    }

    while !frontier.is_empty() {
        if basis.rounds == limit {
            return Err(TerwilligerError::ClosureNotReached { limit, dim: basis.dim() });
        }
        basis.rounds += 1;
        let mut next = Vec::new();
        for idx in frontier {
            let (row, col) = (basis.elements[idx].row, basis.elements[idx].col);
            for (a, g) in &generators[row] {
                // elements are normalized, so |g X| <= |g|
                let product = g * &basis.elements[idx].matrix;
                if let Some(new) = try_add(&mut basis, &mut by_block, *a, col, product, g.norm()) {
                    next.push(new);
                }
            }
        }
        frontier = next;
    }
    Ok(basis)
}

/// Gram–Schmidt (two passes) against the existing elements of the same
/// block; appends the normalized remainder if it is not negligible relative
/// to `scale`.
fn try_add(
    basis: &mut AlgebraBasis,
    by_block: &mut HashMap<(usize, usize), Vec<usize>>,
    row: usize,
    col: usize,
    mut candidate: DMatrix<f64>,
    scale: f64,
) -> Option<usize> {
    if candidate.norm() <= INDEPENDENCE_RATIO * scale {
        return None;
    }
    let existing = by_block.entry((row, col)).or_default();
    for _ in 0..2 {
        for &idx in existing.iter() {
            let e = &basis.elements[idx].matrix;
            let coeff = candidate.dot(e);
            candidate -= e * coeff;
        }
    }
    let remainder = candidate.norm();
    if remainder <= INDEPENDENCE_RATIO * scale {
        return None;
    }
    candidate /= remainder;
    let idx = basis.elements.len();
    basis.elements.push(BlockElement { row, col, matrix: candidate });
    existing.push(idx);
    Some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::scheme::{complete, hamming, johnson};
    use crate::terwilliger::dual_idempotents;

    #[test]
    fn k2_is_full_matrix_algebra() {
        let s = complete(2).unwrap();
        let d = dual_idempotents(&s, 0).unwrap();
        let t = algebra_closure(&s, &d, &TerwilligerConfig::default()).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn k4_contains_identity_and_is_closed() {
        let s = complete(4).unwrap();
        let d = dual_idempotents(&s, 1).unwrap();
        let t = algebra_closure(&s, &d, &TerwilligerConfig::default()).unwrap();
        // K_4: dims 2 (primary) + 1 (two copies of one type): 2^2 + 1^2
        assert_eq!(t.dim(), 5);
        let full: Vec<DMatrix<f64>> = (0..t.dim()).map(|i| t.to_full(i)).collect();
        let project = |m: &DMatrix<f64>| {
            let mut r = m.clone();
            for b in &full {
                r -= b * m.dot(b);
            }
            r
        };
        assert!(max_abs(&project(&DMatrix::identity(4, 4))) < 1e-12);
        for a in &full {
            for b in &full {
                assert!(max_abs(&project(&(a * b))) < 1e-10);
            }
        }
        // orthonormal
        for (i, a) in full.iter().enumerate() {
            for (j, b) in full.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((a.dot(b) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn round_limit_is_reported() {
        let s = hamming(3, 2).unwrap();
        let d = dual_idempotents(&s, 0).unwrap();
        let config = TerwilligerConfig { closure_rounds: Some(0), ..TerwilligerConfig::default() };
        assert!(matches!(algebra_closure(&s, &d, &config), Err(TerwilligerError::ClosureNotReached { limit: 0, .. })));
    }

    #[test]
    fn numerically_zero_products_are_rejected() {
        // several products here vanish up to roundoff; T has dimension 15
        let s = johnson(5, 2).unwrap();
        let d = dual_idempotents(&s, 0).unwrap();
        assert_eq!(algebra_closure(&s, &d, &TerwilligerConfig::default()).unwrap().dim(), 15);
    }
}
