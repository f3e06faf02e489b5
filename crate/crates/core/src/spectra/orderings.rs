//! P- and Q-polynomial orderings.
//!
//! Both searches use the same observation: once the generator (`R_1` or
//! `E_1`) is fixed, a tridiagonal ordering is forced, because the product of
//! the generator with the `i`-th element may only reach one unused element.

use serde::Serialize;

use super::{krein_parameters, EigenData, KreinTensor, SpectraError};
use crate::scheme::Scheme;
use crate::tolerance::Tolerances;

/// A Q-polynomial ordering with its reindexed Krein tensor and dual
/// intersection numbers.
///
/// `ordering[a]` is the eigen-label of the idempotent called `E_a` in the
/// Q-polynomial ordering; `ordering[0] == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QStructure {
    pub ordering: Vec<usize>,
    pub krein: KreinTensor,
    pub multiplicities: Vec<usize>,
    /// `a*_i = q^i_{1,i}`.
    pub dual_a: Vec<f64>,
    /// `b*_i = q^i_{1,i+1}`, with `b*_D = 0`.
    pub dual_b: Vec<f64>,
    /// `c*_i = q^i_{1,i-1}`, with `c*_0 = 0`.
    pub dual_c: Vec<f64>,
}

impl QStructure {
    pub fn classes(&self) -> usize {
        self.ordering.len() - 1
    }

    /// Re-runs the tridiagonal pattern test on the stored tensor.
    pub fn verify_pattern(&self, tol: &Tolerances) -> bool {
        let zero = krein_zero(tol, self.multiplicities[1] as f64);
        let identity: Vec<usize> = (0..self.ordering.len()).collect();
        is_tridiagonal_ordering(&identity, |i, j, k| self.krein.get(i, j, k).abs() > zero)
    }
}

/// A P-polynomial ordering of the relations with its intersection array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PStructure {
    pub ordering: Vec<usize>,
    pub valencies: Vec<usize>,
    /// `a_i = p^i_{1,i}`.
    pub a: Vec<u64>,
    /// `b_i = p^i_{1,i+1}`, with `b_D = 0`.
    pub b: Vec<u64>,
    /// `c_i = p^i_{1,i-1}`, with `c_0 = 0`.
    pub c: Vec<u64>,
}

impl PStructure {
    pub fn is_bipartite(&self) -> bool {
        self.a.iter().all(|&a| a == 0)
    }
}

fn krein_zero(tol: &Tolerances, m1: f64) -> f64 {
    tol.krein_zero * m1.max(1.0)
}

/// Checks the tridiagonal pattern for `ordering`, where `nonzero(g, j, k)`
/// reports whether the structure constant with subscripts `g, j` and
/// superscript `k` is nonzero (labels before reindexing).
pub fn is_tridiagonal_ordering(ordering: &[usize], nonzero: impl Fn(usize, usize, usize) -> bool) -> bool {
    let size = ordering.len();
    if size < 2 || ordering[0] != 0 {
        return false;
    }
    let g = ordering[1];
    for j in 0..size {
        for k in 0..size {
            if j.abs_diff(k) > 1 && nonzero(g, ordering[j], ordering[k]) {
                return false;
            }
        }
    }
    (0..size - 1).all(|i| nonzero(g, ordering[i + 1], ordering[i]))
        && (1..size).all(|i| nonzero(g, ordering[i - 1], ordering[i]))
}

/// Every ordering with `ordering[0] == 0` that passes
/// [`is_tridiagonal_ordering`], sorted lexicographically.
pub fn tridiagonal_orderings(size: usize, nonzero: impl Fn(usize, usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in 1..size {
        let mut ordering = vec![0, first];
        let mut used = vec![false; size];
        used[0] = true;
        used[first] = true;
        while ordering.len() < size {
            let current = *ordering.last().expect("nonempty");
            let reachable: Vec<usize> = (0..size).filter(|&h| !used[h] && nonzero(first, current, h)).collect();
            if reachable.len() != 1 {
                break;
            }
            used[reachable[0]] = true;
            ordering.push(reachable[0]);
        }
        if ordering.len() == size && is_tridiagonal_ordering(&ordering, &nonzero) {
            out.push(ordering);
        }
    }
    out.sort();
    out
}

/// All Q-polynomial orderings of the primitive idempotents (possibly none).
pub fn q_polynomial_orderings(eigen: &EigenData, tol: &Tolerances) -> Result<Vec<QStructure>, SpectraError> {
    let krein = krein_parameters(eigen, tol)?;
    let size = krein.size();
    let orderings = tridiagonal_orderings(size, |g, j, k| {
        krein.get(g, j, k).abs() > krein_zero(tol, eigen.multiplicities[g] as f64)
    });
    let structures: Vec<QStructure> = orderings
        .into_iter()
        .map(|ordering| {
            let reindexed = krein.reindexed(&ordering);
            let multiplicities = ordering.iter().map(|&i| eigen.multiplicities[i]).collect();
            let dual_a = (0..size).map(|i| reindexed.get(1, i, i)).collect();
            let dual_b = (0..size).map(|i| if i + 1 < size { reindexed.get(1, i + 1, i) } else { 0.0 }).collect();
            let dual_c = (0..size).map(|i| if i > 0 { reindexed.get(1, i - 1, i) } else { 0.0 }).collect();
            QStructure { ordering, krein: reindexed, multiplicities, dual_a, dual_b, dual_c }
        })
        .collect();
    debug_assert!(structures.iter().all(|q| q.verify_pattern(tol)));
    Ok(structures)
}

/// `(a*, b*, c*)` of a Q-polynomial structure.
pub fn dual_intersection_numbers(q: &QStructure) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    (q.dual_a.clone(), q.dual_b.clone(), q.dual_c.clone())
}

/// All P-polynomial orderings of the relations (possibly none).
pub fn p_polynomial_orderings(scheme: &Scheme) -> Vec<PStructure> {
    let size = scheme.classes() + 1;
    tridiagonal_orderings(size, |g, j, k| scheme.p(g, j, k) != 0)
        .into_iter()
        .map(|ordering| {
            let g = ordering[1];
            let at = |j: usize, k: usize| scheme.p(g, ordering[j], ordering[k]);
            PStructure {
                valencies: ordering.iter().map(|&i| scheme.valencies()[i]).collect(),
                a: (0..size).map(|i| at(i, i)).collect(),
                b: (0..size).map(|i| if i + 1 < size { at(i + 1, i) } else { 0 }).collect(),
                c: (0..size).map(|i| if i > 0 { at(i - 1, i) } else { 0 }).collect(),
                ordering,
            }
        })
        .collect()
}
