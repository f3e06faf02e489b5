//! Bose–Mesner eigenstructure: primitive idempotents, eigenmatrices,
//! multiplicities, Krein parameters and P-/Q-polynomial orderings.

mod exact;
mod krein;
mod orderings;

pub use exact::{krein_exact, natural_dual_numbers, ExactDualNumbers, RationalTensor};
pub use krein::{krein_parameters, krein_residual, KreinTensor};
pub use orderings::{
    dual_intersection_numbers, is_tridiagonal_ordering, p_polynomial_orderings, q_polynomial_orderings,
    tridiagonal_orderings, PStructure, QStructure,
};

use std::cmp::Ordering;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::linalg::{max_abs, symmetric_eigen, LinalgError};
use crate::scheme::Scheme;
use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error(
        "expected {expected} common eigenspaces, found {found} (smallest separating gap {smallest_gap:e}, largest merged gap {largest_merged_gap:e})"
    )]
    EigenspaceSeparationFailure { expected: usize, found: usize, smallest_gap: f64, largest_merged_gap: f64 },
    #[error("A_{relation} is not scalar on eigenspace {idempotent} (residual {residual:e})")]
    NotScalar { idempotent: usize, relation: usize, residual: f64 },
    #[error("trace of E_{idempotent} is {trace}, not within tolerance of an integer")]
    NonIntegerTrace { idempotent: usize, trace: f64 },
    #[error("no eigenspace carries the valencies (all-ones eigenvector missing)")]
    NoTrivialIdempotent,
    #[error("Krein parameter q^{k}_{{{i},{j}}} = {value:e} is negative beyond tolerance")]
    NegativeKreinParameter { i: usize, j: usize, k: usize, value: f64 },
    #[error("ordering {ordering:?} is not Q-polynomial")]
    NotQPolynomial { ordering: Vec<usize> },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl SpectraError {
    pub fn is_numerical(&self) -> bool {
        !matches!(self, SpectraError::NotQPolynomial { .. })
    }
}

/// Eigenstructure of the Bose–Mesner algebra.
///
/// Rows of `p` index idempotents and columns index relations
/// (`A_j E_i = p[(i, j)] E_i`). `q[(l, i)]` is `n` times the entry of `E_i`
/// on any pair in `R_l`, so `E_i = (1/n) sum_l q[(l, i)] A_l` and `pq = nI`.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub n: usize,
    pub idempotents: Vec<DMatrix<f64>>,
    /// Orthonormal basis (columns) of the range of each idempotent.
    pub bases: Vec<DMatrix<f64>>,
    pub p: DMatrix<f64>,
    pub q: DMatrix<f64>,
    pub valencies: Vec<usize>,
    pub multiplicities: Vec<usize>,
    /// Coefficients of the generic element used to split the algebra.
    pub coefficients: Vec<f64>,
}

impl EigenData {
    pub fn classes(&self) -> usize {
        self.idempotents.len() - 1
    }

    /// `max_{i,j} |E_i E_j - delta_ij E_i|` and `|sum_i E_i - I|`, max norm.
    pub fn idempotent_residuals(&self) -> (f64, f64) {
        let mut products: f64 = 0.0;
        for (i, ei) in self.idempotents.iter().enumerate() {
            for (j, ej) in self.idempotents.iter().enumerate() {
                let mut r = ei * ej;
                if i == j {
                    r -= ei;
                }
                products = products.max(max_abs(&r));
            }
        }
        let mut sum = DMatrix::identity(self.n, self.n) * -1.0;
        for e in &self.idempotents {
            sum += e;
        }
        (products, max_abs(&sum))
    }

    /// `max |PQ - nI|` and `max |QP - nI|`.
    pub fn pq_residual(&self) -> f64 {
        let n_i = DMatrix::identity(self.p.nrows(), self.p.nrows()) * self.n as f64;
        max_abs(&(&self.p * &self.q - &n_i)).max(max_abs(&(&self.q * &self.p - &n_i)))
    }

    /// Traces of the idempotents as computed (before rounding).
    pub fn traces(&self) -> Vec<f64> {
        self.idempotents.iter().map(|e| e.trace()).collect()
    }
}

/// Deterministic coefficients `frac((j+1) * pi^j)` for the generic element
/// `sum_j r_j A_j`.
pub fn generic_coefficients(classes: usize) -> Vec<f64> {
    (0..=classes)
        .map(|j| {
            let x = (j as f64 + 1.0) * PI.powi(j as i32);
            x - x.floor()
        })
        .collect()
}

fn approx_cmp(a: f64, b: f64, tol: f64) -> Ordering {
    if (a - b).abs() <= tol {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// Primitive idempotents as the eigenprojections of one generic element of
/// the Bose–Mesner algebra.
///
/// `E_0` is the all-ones projection; the others are sorted by multiplicity,
/// then by descending eigenvalue of `A_1`, then by descending eigenvalue row.
pub fn eigensystem(scheme: &Scheme, tol: &Tolerances) -> Result<EigenData, SpectraError> {
    let n = scheme.n();
    let classes = scheme.classes();
    let coefficients = generic_coefficients(classes);
    let generic = scheme.combination(&coefficients);
    let eig = symmetric_eigen(&generic)?;

    let scale = eig.values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let gap_tol = tol.eigen_gap * scale;
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    let mut smallest_gap = f64::INFINITY;
    let mut largest_merged_gap: f64 = 0.0;
    for k in 1..=n {
        if k == n || eig.values[k] - eig.values[k - 1] > gap_tol {
            groups.push((start, k));
            start = k;
            if k < n {
                smallest_gap = smallest_gap.min(eig.values[k] - eig.values[k - 1]);
            }
        } else {
            largest_merged_gap = largest_merged_gap.max(eig.values[k] - eig.values[k - 1]);
        }
    }
    if groups.len() != classes + 1 {
        return Err(SpectraError::EigenspaceSeparationFailure {
            expected: classes + 1,
            found: groups.len(),
            smallest_gap,
            largest_merged_gap,
        });
    }

    struct Group {
        basis: DMatrix<f64>,
        eigenvalues: Vec<f64>,
    }
    let valencies = scheme.valencies().to_vec();
    let mut found = Vec::with_capacity(groups.len());
    for (g, &(lo, hi)) in groups.iter().enumerate() {
        let basis = eig.vectors.columns(lo, hi - lo).into_owned();
        let m = (hi - lo) as f64;
        let images = scheme.apply_all(&basis);
        let mut eigenvalues = Vec::with_capacity(classes + 1);
        for (j, image) in images.iter().enumerate() {
            let lambda = (basis.transpose() * image).trace() / m;
            let residual = max_abs(&(image - &basis * lambda));
            if residual > tol.idempotent * (valencies[j] as f64).max(1.0) {
                return Err(SpectraError::NotScalar { idempotent: g, relation: j, residual });
            }
            eigenvalues.push(lambda);
        }
        found.push(Group { basis, eigenvalues });
    }

    let trivial = found
        .iter()
        .enumerate()
        .filter(|(_, g)| g.basis.ncols() == 1)
        .map(|(idx, g)| {
            let dev = g.eigenvalues.iter().zip(&valencies).fold(0.0f64, |a, (l, &k)| a.max((l - k as f64).abs()));
            (idx, dev)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .filter(|&(_, dev)| dev <= 1e-6 * n as f64)
        .map(|(idx, _)| idx)
        .ok_or(SpectraError::NoTrivialIdempotent)?;

    let cmp_tol = 1e-6 * scale;
    let mut order: Vec<usize> = (0..found.len()).filter(|&g| g != trivial).collect();
    order.sort_by(|&a, &b| {
        let (ga, gb) = (&found[a], &found[b]);
        ga.basis.ncols().cmp(&gb.basis.ncols()).then_with(|| {
            let row_a = &ga.eigenvalues[1..];
            let row_b = &gb.eigenvalues[1..];
            row_a
                .iter()
                .zip(row_b)
                .map(|(x, y)| approx_cmp(*y, *x, cmp_tol))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });
    order.insert(0, trivial);

    let mut idempotents = Vec::with_capacity(classes + 1);
    let mut bases = Vec::with_capacity(classes + 1);
    let mut p = DMatrix::zeros(classes + 1, classes + 1);
    let mut multiplicities = Vec::with_capacity(classes + 1);
    for (i, &g) in order.iter().enumerate() {
        let group = &found[g];
        let e = &group.basis * group.basis.transpose();
        let trace = e.trace();
        let rounded = trace.round();
        if (trace - rounded).abs() > tol.integer || rounded < 1.0 {
            return Err(SpectraError::NonIntegerTrace { idempotent: i, trace });
        }
        multiplicities.push(rounded as usize);
        for j in 0..=classes {
            p[(i, j)] = group.eigenvalues[j];
        }
        idempotents.push(e);
        bases.push(group.basis.clone());
    }

    // Q from the entries of the idempotents, averaged over each relation.
    let mut q = DMatrix::zeros(classes + 1, classes + 1);
    for (i, e) in idempotents.iter().enumerate() {
        let mut sums = vec![0.0; classes + 1];
        for x in 0..n {
            for (y, &l) in scheme.row(x).iter().enumerate() {
                sums[l] += e[(x, y)];
            }
        }
        for l in 0..=classes {
            q[(l, i)] = sums[l] / valencies[l] as f64;
        }
    }

    Ok(EigenData { n, idempotents, bases, p, q, valencies, multiplicities, coefficients })
}
