//! Per-module invariants: endpoints, diameters, thin and dual-thin flags.

use nalgebra::DMatrix;

use super::{DualIdempotents, TerwilligerError};
use crate::linalg::{max_abs, rank};
use crate::spectra::EigenData;
use crate::tolerance::Tolerances;

/// Profile of one irreducible `T(x)`-module `W`.
///
/// Primal quantities come from the dual idempotents: `endpoint` is the
/// first `i` with `E*_i W != 0` and `diameter` is one less than the number of
/// such `i`. Dual quantities come from the primitive idempotents in the
/// labelling given by `ordering` (identity for eigen labels).
#[derive(Clone, Debug, PartialEq)]
pub struct TModuleSummary {
    /// Orthonormal basis as columns, grouped by subconstituent.
    pub basis: DMatrix<f64>,
    pub dim: usize,
    pub endpoint: usize,
    pub diameter: usize,
    pub dual_endpoint: usize,
    pub dual_diameter: usize,
    pub thin: bool,
    pub dual_thin: bool,
    pub e_profile: Vec<bool>,
    pub e_star_profile: Vec<bool>,
    /// `dim E_i W`.
    pub e_ranks: Vec<usize>,
    /// `dim E*_i W`.
    pub e_star_ranks: Vec<usize>,
    /// Idempotent labels used for `e_profile` / `e_ranks`.
    pub ordering: Vec<usize>,
}

fn first_and_span(profile: &[bool]) -> Option<(usize, usize)> {
    let first = profile.iter().position(|&b| b)?;
    Some((first, profile.iter().filter(|&&b| b).count() - 1))
}

impl TModuleSummary {
    fn assemble(
        basis: DMatrix<f64>,
        e_profile: Vec<bool>,
        e_ranks: Vec<usize>,
        e_star_profile: Vec<bool>,
        e_star_ranks: Vec<usize>,
        ordering: Vec<usize>,
    ) -> Option<Self> {
        let (dual_endpoint, dual_diameter) = first_and_span(&e_profile)?;
        let (endpoint, diameter) = first_and_span(&e_star_profile)?;
        Some(Self {
            dim: basis.ncols(),
            basis,
            endpoint,
            diameter,
            dual_endpoint,
            dual_diameter,
            thin: e_star_ranks.iter().all(|&r| r <= 1),
            dual_thin: e_ranks.iter().all(|&r| r <= 1),
            e_profile,
            e_star_profile,
            e_ranks,
            e_star_ranks,
            ordering,
        })
    }

    /// The same module with primitive idempotents relabelled: position `a`
    /// of the result refers to eigen label `ordering[a]`.
    pub fn reindexed(&self, ordering: &[usize]) -> Self {
        // undo any previous relabelling first
        let mut by_label = vec![(false, 0usize); self.e_ranks.len()];
        for (pos, &label) in self.ordering.iter().enumerate() {
            by_label[label] = (self.e_profile[pos], self.e_ranks[pos]);
        }
        let e_profile = ordering.iter().map(|&l| by_label[l].0).collect();
        let e_ranks = ordering.iter().map(|&l| by_label[l].1).collect();
        Self::assemble(
            self.basis.clone(),
            e_profile,
            e_ranks,
            self.e_star_profile.clone(),
            self.e_star_ranks.clone(),
            ordering.to_vec(),
        )
        .expect("relabelling keeps the profile nonempty")
    }

    /// Indices where `e_profile` holds.
    pub fn support(&self) -> Vec<usize> {
        self.e_profile.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }
}

/// Profiles a certified `T(x)`-module in eigen labels.
pub fn module_profile(
    basis: &DMatrix<f64>,
    eigen: &EigenData,
    duals: &DualIdempotents,
    tol: &Tolerances,
) -> Result<TModuleSummary, TerwilligerError> {
    let size = eigen.idempotents.len();
    let mut e_profile = Vec::with_capacity(size);
    let mut e_ranks = Vec::with_capacity(size);
    for e in &eigen.idempotents {
        let image = e * basis;
        e_profile.push(max_abs(&image) > tol.rank);
        e_ranks.push(rank(&image, tol.rank));
    }
    let mut e_star_profile = Vec::with_capacity(size);
    let mut e_star_ranks = Vec::with_capacity(size);
    for i in 0..=duals.classes() {
        let image = duals.apply(i, basis);
        e_star_profile.push(max_abs(&image) > tol.rank);
        e_star_ranks.push(rank(&image, tol.rank));
    }
    TModuleSummary::assemble(basis.clone(), e_profile, e_ranks, e_star_profile, e_star_ranks, (0..size).collect())
        .ok_or(TerwilligerError::EmptyProfile { base_point: duals.base_point })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(e_profile: Vec<bool>, e_ranks: Vec<usize>) -> TModuleSummary {
        let dim = e_ranks.iter().sum();
        TModuleSummary::assemble(
            DMatrix::zeros(4, dim),
            e_profile,
            e_ranks,
            vec![true, true, false],
            vec![1, 1, 0],
            vec![0, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn counts_and_flags() {
        let s = summary(vec![false, true, true], vec![0, 1, 1]);
        assert_eq!((s.dual_endpoint, s.dual_diameter), (1, 1));
        assert_eq!((s.endpoint, s.diameter), (0, 1));
        assert!(s.thin && s.dual_thin);
        let s = summary(vec![true, false, true], vec![2, 0, 1]);
        assert_eq!((s.dual_endpoint, s.dual_diameter), (0, 1));
        assert!(!s.dual_thin);
    }

    #[test]
    fn reindexing_composes() {
        let s = summary(vec![false, true, true], vec![0, 1, 2]);
        let r = s.reindexed(&[0, 2, 1]);
        assert_eq!(r.e_ranks, vec![0, 2, 1]);
        assert_eq!(r.dual_endpoint, 1);
        let back = r.reindexed(&[0, 1, 2]);
        assert_eq!(back.e_ranks, s.e_ranks);
        assert_eq!(back, s);
    }

    #[test]
    fn empty_profile_is_none() {
        assert!(TModuleSummary::assemble(DMatrix::zeros(2, 1), vec![false; 2], vec![0; 2], vec![true, false], vec![1, 0], vec![0, 1]).is_none());
    }
}
