//! Running every applicable check over a list of schemes.

use rayon::prelude::*;

use super::checks::*;
use super::{CheckId, CheckReport};
use crate::scheme::Scheme;
use crate::spectra::{eigensystem, p_polynomial_orderings, q_polynomial_orderings, EigenData, PStructure, QStructure};
use crate::terwilliger::{is_dual_thin, DualThinReport, TerwilligerConfig};

/// Everything the checks need for one scheme.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub eigen: EigenData,
    pub p_structures: Vec<PStructure>,
    pub q_structures: Vec<QStructure>,
    /// Decompositions at the configured base points; only computed when the
    /// scheme has a Q-polynomial ordering.
    pub dual_thin: Option<DualThinReport>,
}

pub fn analyze(scheme: &Scheme, config: &TerwilligerConfig) -> crate::Result<Analysis> {
    let eigen = eigensystem(scheme, &config.tol)?;
    let p_structures = p_polynomial_orderings(scheme);
    let q_structures = q_polynomial_orderings(&eigen, &config.tol)?;
    let dual_thin = if q_structures.is_empty() { None } else { Some(is_dual_thin(scheme, &eigen, config)?) };
    Ok(Analysis { eigen, p_structures, q_structures, dual_thin })
}

const Q_CHECKS: [CheckId; 8] = [
    CheckId::ConjBi,
    CheckId::Thm2,
    CheckId::Lem21i,
    CheckId::Lem21ii,
    CheckId::Lem22,
    CheckId::TRange,
    CheckId::DimBounds,
    CheckId::Cor,
];

/// All reports for one analysed scheme, ordered by check id, then ordering.
pub fn reports_for(scheme: &Scheme, analysis: &Analysis) -> Vec<CheckReport> {
    let label = scheme.label();
    let mut reports = Vec::new();
    if analysis.p_structures.is_empty() {
        for id in [CheckId::Thm1, CheckId::PStructMono] {
            reports.push(CheckReport::not_applicable(id, label, &[], "not P-polynomial"));
        }
    }
    for p in &analysis.p_structures {
        reports.push(check_valency_unimodality(label, p));
        reports.push(check_pstructure_monotonicity(label, p));
    }
    match &analysis.dual_thin {
        Some(dual) if !analysis.q_structures.is_empty() => {
            for q in &analysis.q_structures {
                let decs = &dual.decompositions;
                reports.push(check_multiplicity_conjecture(label, q));
                reports.push(check_main_theorem(label, q, dual));
                reports.extend(check_lemma_interval(label, decs, q));
                reports.push(check_lemma_2t_plus_d(label, decs, q));
                reports.push(check_t_range(label, decs, q));
                reports.push(check_dim_bounds(label, decs, q));
                reports.push(check_bipartite_corollary(label, &analysis.p_structures, q));
            }
        }
        _ => {
            for id in Q_CHECKS {
                reports.push(CheckReport::not_applicable(id, label, &[], "not Q-polynomial"));
            }
        }
    }
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id).then_with(|| a.ordering.cmp(&b.ordering)));
    reports
}

#[derive(Debug)]
pub struct SchemeFailure {
    pub scheme_label: String,
    pub error: crate::Error,
}

#[derive(Debug, Default)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub failures: Vec<SchemeFailure>,
}

/// Analyses the schemes in parallel and concatenates their reports in input
/// order. A scheme whose analysis fails contributes a [`SchemeFailure`]
/// instead of reports; the others are unaffected.
pub fn run_suite(schemes: &[Scheme], config: &TerwilligerConfig) -> SuiteOutcome {
    let results: Vec<_> = schemes
        .par_iter()
        .map(|s| analyze(s, config).map(|a| reports_for(s, &a)))
        .collect();
    let mut outcome = SuiteOutcome::default();
    for (scheme, result) in schemes.iter().zip(results) {
        match result {
            Ok(reports) => outcome.reports.extend(reports),
            Err(error) => outcome.failures.push(SchemeFailure { scheme_label: scheme.label().to_string(), error }),
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{complete, cycle, hamming, johnson};
    use crate::theorems::Verdict;

    #[test]
    fn small_suite_has_no_failures() {
        let schemes = vec![complete(4).unwrap(), cycle(5).unwrap(), cycle(6).unwrap(), hamming(3, 2).unwrap(), johnson(4, 2).unwrap()];
        let outcome = run_suite(&schemes, &TerwilligerConfig::default());
        assert!(outcome.failures.is_empty());
        assert!(outcome.reports.iter().all(|r| r.verdict != Verdict::Fails), "{:#?}", outcome.reports.iter().find(|r| r.verdict == Verdict::Fails));
        let thm2 = outcome.reports.iter().filter(|r| r.check_id == CheckId::Thm2 && r.verdict == Verdict::Holds).count();
        assert!(thm2 >= schemes.len());
    }

    #[test]
    fn empty_suite() {
        let outcome = run_suite(&[], &TerwilligerConfig::default());
        assert!(outcome.reports.is_empty() && outcome.failures.is_empty());
    }

    #[test]
    fn non_q_polynomial_scheme_is_gated() {
        // K_3 x K_3 with the three nontrivial product classes.
        let s = Scheme::from_flat(9, (0..81).map(|e| { let (x, y) = (e / 9, e % 9); usize::from(x / 3 != y / 3) + 2 * usize::from(x % 3 != y % 3) }).collect()).unwrap();
        let outcome = run_suite(&[s], &TerwilligerConfig::default());
        for r in outcome.reports.iter().filter(|r| Q_CHECKS.contains(&r.check_id)) {
            assert_eq!(r.verdict, Verdict::NotApplicable);
            assert_eq!(r.witness["unmet_hypothesis"], "not Q-polynomial");
        }
    }

    #[test]
    fn report_order_is_sorted() {
        let outcome = run_suite(&[cycle(6).unwrap()], &TerwilligerConfig::default());
        let keys: Vec<_> = outcome.reports.iter().map(|r| (r.check_id, r.ordering.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
