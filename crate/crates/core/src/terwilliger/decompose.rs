//! Orthogonal decomposition of the standard module into irreducible
//! `T(x)`-modules.
//!
//! 1. Span `T(x)` ([`algebra_closure`]).
//! 2. Solve for the center inside the span; a generic self-adjoint central
//!    element has one eigenvalue per isotypic component.
//! 3. In each isotypic component solve for the centralizer of the restricted
//!    action; a generic self-adjoint centralizer element splits the component
//!    into irreducible modules of equal dimension.
//!
//! Every subspace is kept in block coordinates (one orthonormal frame per
//! subconstituent), so central and centralizer elements are block diagonal.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::block_of;
use super::{algebra_closure, dual_idempotents, module_profile, AlgebraBasis, DualIdempotents, TModuleSummary};
use super::{TerwilligerConfig, TerwilligerError};
use crate::linalg::{max_abs, nullspace, symmetric_eigen};
use crate::scheme::Scheme;
use crate::spectra::EigenData;
use crate::tolerance::Tolerances;

/// Shape of one isotypic component: `multiplicity` copies of an irreducible
/// module of dimension `module_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotypicSummary {
    pub module_dim: usize,
    pub multiplicity: usize,
}

/// `V = W_1 + ... + W_s` at one base point, with certificates.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub base_point: usize,
    pub modules: Vec<TModuleSummary>,
    /// Largest defect among invariance, orthogonality and completeness checks.
    pub residual: f64,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub isotypic: Vec<IsotypicSummary>,
}

impl Decomposition {
    /// Module profiles with the primitive idempotents relabelled by a
    /// (Q-polynomial) ordering.
    pub fn reindexed(&self, ordering: &[usize]) -> Vec<TModuleSummary> {
        self.modules.iter().map(|w| w.reindexed(ordering)).collect()
    }

    /// Sum of `(dim W)^2` over isomorphism types (Wedderburn count).
    pub fn wedderburn_dim(&self) -> usize {
        self.isotypic.iter().map(|t| t.module_dim * t.module_dim).sum()
    }
}

#[derive(Clone, Debug)]
struct Part {
    block: usize,
    /// `k_block x d` orthonormal columns in block-local coordinates.
    frame: DMatrix<f64>,
}

#[derive(Clone, Debug)]
struct Space {
    parts: Vec<Part>,
}

impl Space {
    fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.frame.ncols()).sum()
    }

    /// Basis of the subspace as `n x dim` columns in vertex coordinates.
    fn embed(&self, duals: &DualIdempotents) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(duals.n(), self.dim());
        let mut col = 0;
        for part in &self.parts {
            for c in 0..part.frame.ncols() {
                for (r, &y) in duals.blocks[part.block].iter().enumerate() {
                    out[(y, col)] = part.frame[(r, c)];
                }
                col += 1;
            }
        }
        out
    }
}

/// A block-diagonal element: one square matrix per part of a [`Space`].
type BlockDiagonal = Vec<DMatrix<f64>>;

/// Center of `T` inside its span: combinations `z` of the diagonal-block
/// basis elements with `z M = M z` for the generic element `M` of the
/// Bose–Mesner algebra. Block-diagonality already gives commutation with
/// every `E*_i`, and `M` generates the Bose–Mesner algebra.
fn center_basis(algebra: &AlgebraBasis, m_blocks: &[Vec<DMatrix<f64>>], tol: f64) -> Vec<BlockDiagonal> {
    let blocks = &algebra.blocks;
    let size = blocks.len();
    let mut offsets = vec![vec![0usize; size]; size];
    let mut rows = 0;
    for a in 0..size {
        for b in 0..size {
            offsets[a][b] = rows;
            rows += blocks[a].len() * blocks[b].len();
        }
    }
    let diagonal: Vec<usize> = algebra.diagonal_elements().map(|(idx, _)| idx).collect();
    let mut k = DMatrix::zeros(rows, diagonal.len());
    for (col, &idx) in diagonal.iter().enumerate() {
        let e = &algebra.elements[idx];
        let h = e.row;
        for b in 0..size {
            let prod = &e.matrix * &m_blocks[h][b];
            let width = blocks[b].len();
            for r in 0..prod.nrows() {
                for c in 0..width {
                    k[(offsets[h][b] + r * width + c, col)] += prod[(r, c)];
                }
            }
        }
        for a in 0..size {
            let prod = &m_blocks[a][h] * &e.matrix;
            let width = blocks[h].len();
            for r in 0..prod.nrows() {
                for c in 0..width {
                    k[(offsets[a][h] + r * width + c, col)] -= prod[(r, c)];
                }
            }
        }
    }
    let null = nullspace(&k, tol);
    (0..null.ncols())
        .map(|v| {
            let mut z: BlockDiagonal = blocks.iter().map(|b| DMatrix::zeros(b.len(), b.len())).collect();
            for (row, &idx) in diagonal.iter().enumerate() {
                let e = &algebra.elements[idx];
                z[e.row] += &e.matrix * null[(row, v)];
            }
            z
        })
        .collect()
}

/// Centralizer of the `T`-action restricted to a `T`-invariant subspace:
/// block-diagonal `C` (one block per part) with `C X = X C`, where `X` is the
/// compression of the generic element `M`.
fn centralizer_basis(space: &Space, m_blocks: &[Vec<DMatrix<f64>>], tol: f64) -> Vec<BlockDiagonal> {
    let parts = &space.parts;
    let dims: Vec<usize> = parts.iter().map(|p| p.frame.ncols()).collect();
    let mut unknown_offset = Vec::with_capacity(parts.len());
    let mut unknowns = 0;
    for &d in &dims {
        unknown_offset.push(unknowns);
        unknowns += d * d;
    }
    let total: usize = dims.iter().sum();
    let mut k = DMatrix::zeros(total * total, unknowns);
    let mut row_base = 0;
    for (p, part_p) in parts.iter().enumerate() {
        for (q, part_q) in parts.iter().enumerate() {
            let x = part_p.frame.transpose() * &m_blocks[part_p.block][part_q.block] * &part_q.frame;
            let (dp, dq) = (dims[p], dims[q]);
            // (C_p X - X C_q)[r, c]
            for r in 0..dp {
                for c in 0..dq {
                    let row = row_base + r * dq + c;
                    for s in 0..dp {
                        k[(row, unknown_offset[p] + r * dp + s)] += x[(s, c)];
                    }
                    for s in 0..dq {
                        k[(row, unknown_offset[q] + s * dq + c)] -= x[(r, s)];
                    }
                }
            }
            row_base += dp * dq;
        }
    }
    let null = nullspace(&k, tol);
    (0..null.ncols())
        .map(|v| {
            dims.iter()
                .enumerate()
                .map(|(p, &d)| DMatrix::from_fn(d, d, |r, s| null[(unknown_offset[p] + r * d + s, v)]))
                .collect()
        })
        .collect()
}

fn random_symmetric(basis: &[BlockDiagonal], rng: &mut ChaCha8Rng) -> BlockDiagonal {
    let mut out: BlockDiagonal = basis[0].iter().map(|b| DMatrix::zeros(b.nrows(), b.ncols())).collect();
    for element in basis {
        let coeff: f64 = rng.gen_range(-1.0..1.0);
        for (acc, block) in out.iter_mut().zip(element) {
            *acc += block * coeff;
        }
    }
    out.into_iter().map(|b| (&b + b.transpose()) * 0.5).collect()
}

/// Eigenspaces of a block-diagonal symmetric element, grouped by eigenvalue
/// across all parts.
fn split(space: &Space, element: &BlockDiagonal, gap: f64) -> Result<Vec<Space>, TerwilligerError> {
    let mut pairs: Vec<(f64, usize, DVector<f64>)> = Vec::new();
    for (p, block) in element.iter().enumerate() {
        let eig = symmetric_eigen(block)?;
        for (k, &value) in eig.values.iter().enumerate() {
            pairs.push((value, p, eig.vectors.column(k).into_owned()));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let scale = pairs.iter().fold(1.0f64, |acc, p| acc.max(p.0.abs()));
    let mut groups: Vec<Vec<(usize, DVector<f64>)>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (value, p, v) in pairs {
        if groups.is_empty() || value - last > gap * scale {
            groups.push(Vec::new());
        }
        groups.last_mut().expect("group exists").push((p, v));
        last = value;
    }
    Ok(groups
        .into_iter()
        .map(|group| {
            let parts = space
                .parts
                .iter()
                .enumerate()
                .filter_map(|(p, part)| {
                    let vectors: Vec<&DVector<f64>> = group.iter().filter(|(q, _)| *q == p).map(|(_, v)| v).collect();
                    if vectors.is_empty() {
                        return None;
                    }
                    let local = DMatrix::from_columns(&vectors.iter().map(|v| (*v).clone()).collect::<Vec<_>>());
                    Some(Part { block: part.block, frame: &part.frame * local })
                })
                .collect();
            Space { parts }
        })
        .collect())
}

struct Splitter<'a> {
    base_point: usize,
    tol: &'a Tolerances,
    retries: usize,
    rng: ChaCha8Rng,
}

impl Splitter<'_> {
    /// Splits `space` with random self-adjoint elements from `basis` until
    /// exactly `expected` groups appear (all of equal dimension when asked).
    fn run(&mut self, space: &Space, basis: &[BlockDiagonal], expected: usize, equal: bool) -> Result<Vec<Space>, TerwilligerError> {
        if expected == 1 {
            return Ok(vec![space.clone()]);
        }
        let mut last = 0;
        for _ in 0..=self.retries {
            let element = random_symmetric(basis, &mut self.rng);
            let pieces = split(space, &element, self.tol.split_gap)?;
            last = pieces.len();
            let balanced = !equal || pieces.iter().all(|w| w.dim() * expected == space.dim());
            if pieces.len() == expected && balanced {
                return Ok(pieces);
            }
        }
        Err(TerwilligerError::IrreducibilitySplitFailed {
            base_point: self.base_point,
            dim: space.dim(),
            detail: format!("expected {expected} eigenspaces, last attempt gave {last}"),
        })
    }
}

fn sign_normalize(basis: &mut DMatrix<f64>) {
    for mut col in basis.column_iter_mut() {
        if let Some(first) = col.iter().copied().find(|v| v.abs() > 1e-9) {
            if first < 0.0 {
                col.neg_mut();
            }
        }
    }
}

fn lexicographic(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Ordering {
    let key = |v: f64| (v * 1e9).round() as i64;
    let (ca, cb) = (a.column(0), b.column(0));
    ca.iter().zip(cb.iter()).map(|(x, y)| key(*x).cmp(&key(*y))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Invariance defect `max_G |(I - B B^T) G B|` over all generators.
fn invariance_defect(scheme: &Scheme, duals: &DualIdempotents, basis: &DMatrix<f64>) -> f64 {
    let project_out = |image: &DMatrix<f64>| max_abs(&(image - basis * (basis.transpose() * image)));
    let mut worst = scheme.apply_all(basis).iter().map(project_out).fold(0.0, f64::max);
    for i in 0..=duals.classes() {
        worst = worst.max(project_out(&duals.apply(i, basis)));
    }
    worst
}

/// Decomposes the standard module at base point `x` into an orthogonal
/// direct sum of irreducible `T(x)`-modules.
///
/// Modules are certified `T`-invariant (max-norm defect at most
/// `tol.invariance`) and irreducible (one-dimensional restricted
/// centralizer), then sorted by dual endpoint, dimension and basis.
pub fn decompose(scheme: &Scheme, eigen: &EigenData, x: usize, config: &TerwilligerConfig) -> Result<Decomposition, TerwilligerError> {
    let tol = &config.tol;
    let duals = dual_idempotents(scheme, x)?;
    let algebra = algebra_closure(scheme, &duals, config)?;
    let size = duals.blocks.len();
    let m_blocks: Vec<Vec<DMatrix<f64>>> = (0..size)
        .map(|a| {
            (0..size)
                .map(|b| {
                    (0..size).fold(DMatrix::zeros(duals.blocks[a].len(), duals.blocks[b].len()), |acc, j| {
                        acc + block_of(scheme, &duals.blocks[a], &duals.blocks[b], j) * eigen.coefficients[j]
                    })
                })
                .collect()
        })
        .collect();

    let whole = Space {
        parts: duals
            .blocks
            .iter()
            .enumerate()
            .map(|(h, b)| Part { block: h, frame: DMatrix::identity(b.len(), b.len()) })
            .collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(x as u64);
    let mut splitter = Splitter { base_point: x, tol, retries: config.retries, rng };

    let center = center_basis(&algebra, &m_blocks, tol.rank);
    let components = splitter.run(&whole, &center, center.len(), false)?;

    let mut pieces = Vec::new();
    let mut isotypic = Vec::with_capacity(components.len());
    for component in &components {
        let cent = centralizer_basis(component, &m_blocks, tol.rank);
        let mult = (cent.len() as f64).sqrt().round() as usize;
        if mult == 0 || mult * mult != cent.len() || component.dim() % mult != 0 {
            return Err(TerwilligerError::IrreducibilitySplitFailed {
                base_point: x,
                dim: component.dim(),
                detail: format!("centralizer dimension {} is not a square dividing the component", cent.len()),
            });
        }
        isotypic.push(IsotypicSummary { module_dim: component.dim() / mult, multiplicity: mult });
        pieces.extend(splitter.run(component, &cent, mult, true)?);
    }

    let mut residual: f64 = 0.0;
    let mut modules = Vec::with_capacity(pieces.len());
    let mut all_columns = Vec::new();
    for piece in &pieces {
        let restricted = centralizer_basis(piece, &m_blocks, tol.rank);
        if restricted.len() != 1 {
            return Err(TerwilligerError::IrreducibilitySplitFailed {
                base_point: x,
                dim: piece.dim(),
                detail: format!("module centralizer has dimension {}", restricted.len()),
            });
        }
        let mut basis = piece.embed(&duals);
        sign_normalize(&mut basis);
        residual = residual.max(invariance_defect(scheme, &duals, &basis));
        all_columns.extend(basis.column_iter().map(|c| c.into_owned()));
        modules.push(module_profile(&basis, eigen, &duals, tol)?);
    }
    if all_columns.len() != scheme.n() {
        return Err(TerwilligerError::ResidualTooLarge { base_point: x, residual: f64::INFINITY });
    }
    let stacked = DMatrix::from_columns(&all_columns);
    let gram = stacked.transpose() * &stacked - DMatrix::identity(scheme.n(), scheme.n());
    residual = residual.max(max_abs(&gram));
    if residual > tol.invariance {
        return Err(TerwilligerError::ResidualTooLarge { base_point: x, residual });
    }

    modules.sort_by(|a, b| {
        a.dual_endpoint
            .cmp(&b.dual_endpoint)
            .then(a.dim.cmp(&b.dim))
            .then_with(|| lexicographic(&a.basis, &b.basis))
    });
    isotypic.sort_by_key(|t| (t.module_dim, t.multiplicity));
    Ok(Decomposition {
        base_point: x,
        modules,
        residual,
        algebra_dim: algebra.dim(),
        center_dim: center.len(),
        isotypic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{complete, cycle, hamming};
    use crate::spectra::eigensystem;

    fn run(s: &Scheme, x: usize) -> Decomposition {
        let eigen = eigensystem(s, &Tolerances::default()).unwrap();
        decompose(s, &eigen, x, &TerwilligerConfig::default()).unwrap()
    }

    fn dims(d: &Decomposition) -> Vec<usize> {
        let mut v: Vec<usize> = d.modules.iter().map(|m| m.dim).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    #[test]
    fn k4_modules() {
        let s = complete(4).unwrap();
        for x in 0..4 {
            let d = run(&s, x);
            assert_eq!(dims(&d), vec![2, 1, 1]);
            let ones = DVector::from_element(4, 0.5);
            let primary = d.modules.iter().find(|m| m.dim == 2).unwrap();
            let proj = &primary.basis * (primary.basis.transpose() * &ones);
            assert!((proj - &ones).amax() < 1e-10);
            assert_eq!((primary.dual_endpoint, primary.dual_diameter, primary.diameter), (0, 1, 1));
            assert!(primary.thin && primary.dual_thin);
            for m in d.modules.iter().filter(|m| m.dim == 1) {
                assert_eq!((m.dual_endpoint, m.dual_diameter), (1, 0));
            }
        }
    }

    #[test]
    fn cube_modules() {
        let d = run(&hamming(3, 2).unwrap(), 5);
        assert_eq!(dims(&d), vec![4, 2, 2]);
        assert_eq!(d.algebra_dim, 16 + 4);
        assert_eq!(d.algebra_dim, d.wedderburn_dim());
        assert!(d.residual < 1e-10);
    }

    #[test]
    fn pentagon_wedderburn_count() {
        let s = cycle(5).unwrap();
        for x in 0..5 {
            let d = run(&s, x);
            assert_eq!(d.algebra_dim, d.wedderburn_dim());
            assert_eq!(d.modules.iter().map(|m| m.dim).sum::<usize>(), 5);
        }
    }

    #[test]
    fn seed_changes_bases_not_profiles() {
        let s = hamming(4, 2).unwrap();
        let eigen = eigensystem(&s, &Tolerances::default()).unwrap();
        let profile = |seed| {
            let cfg = TerwilligerConfig { seed, ..TerwilligerConfig::default() };
            let d = decompose(&s, &eigen, 3, &cfg).unwrap();
            let mut p: Vec<_> = d
                .modules
                .iter()
                .map(|m| (m.dim, m.dual_endpoint, m.dual_diameter, m.diameter, m.thin, m.dual_thin))
                .collect();
            p.sort();
            p
        };
        assert_eq!(profile(1), profile(0xDEADBEEF));
    }
}
