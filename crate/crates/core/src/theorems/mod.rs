//! Instance checks of the valency/multiplicity inequalities, the lemmas on
//! irreducible `T`-modules they rest on, and the Johnson dual `c*` remark.
//!
//! Every check returns a [`CheckReport`]; nothing here panics or aborts on a
//! failed claim. A failed claim is marked `critical` when it is a proven
//! statement (as opposed to the Bannai–Ito conjecture, or an internal
//! consistency identity whose failure points at the numerics).

mod checks;
mod sequences;
mod suite;

pub use checks::{
    check_bipartite_corollary, check_dim_bounds, check_lemma_2t_plus_d, check_lemma_interval, check_main_theorem,
    check_multiplicity_conjecture, check_pstructure_monotonicity, check_t_range, check_valency_unimodality,
    johnson_dual_c_inequality,
};
pub use sequences::{first_half_violation, is_log_concave, unimodality_violation, HalfViolation};
pub use suite::{analyze, reports_for, run_suite, Analysis, SchemeFailure, SuiteOutcome};

use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Claim identifiers, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckId {
    /// Valency unimodality and half-range inequalities (P-polynomial).
    #[serde(rename = "THM1")]
    Thm1,
    /// `b_{i-1} >= b_i`, `c_i <= c_{i+1}`, log-concave valencies.
    #[serde(rename = "PSTRUCT_MONO")]
    PStructMono,
    /// Bannai–Ito: multiplicities unimodal in a Q-ordering.
    #[serde(rename = "CONJ_BI")]
    ConjBi,
    /// Dual-thin Q-polynomial ⇒ `m_i <= m_{i+1}`, `m_i <= m_{D-i}` for `i < D/2`.
    #[serde(rename = "THM2")]
    Thm2,
    /// `E_i W != 0` iff `t <= i <= t + d*`.
    #[serde(rename = "LEM21i")]
    Lem21i,
    /// Dual thin ⇒ thin and `d = d*`.
    #[serde(rename = "LEM21ii")]
    Lem21ii,
    /// `2t + d >= D`.
    #[serde(rename = "LEM22")]
    Lem22,
    /// `0 <= t <= D - d*`.
    #[serde(rename = "T_RANGE")]
    TRange,
    /// `dim W >= d + 1`, `dim W >= d* + 1`, equality exactly when thin / dual thin.
    #[serde(rename = "DIM_BOUNDS")]
    DimBounds,
    /// Bipartite P- and Q-polynomial ⇒ `m_i = m_{D-i}` and unimodal.
    #[serde(rename = "COR")]
    Cor,
    /// `c*_{k-1} > c*_k` in `J(k^2, k)` for `k > 3`.
    #[serde(rename = "JOHNSON_CSTAR")]
    JohnsonCStar,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Thm1 => "THM1",
            CheckId::PStructMono => "PSTRUCT_MONO",
            CheckId::ConjBi => "CONJ_BI",
            CheckId::Thm2 => "THM2",
            CheckId::Lem21i => "LEM21i",
            CheckId::Lem21ii => "LEM21ii",
            CheckId::Lem22 => "LEM22",
            CheckId::TRange => "T_RANGE",
            CheckId::DimBounds => "DIM_BOUNDS",
            CheckId::Cor => "COR",
            CheckId::JohnsonCStar => "JOHNSON_CSTAR",
        }
    }

    /// Whether a failure of this check contradicts a proven statement.
    fn is_proven_claim(self) -> bool {
        self != CheckId::ConjBi
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

/// Outcome of one check on one scheme under one ordering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub scheme_label: String,
    /// Relation ordering (P checks) or idempotent ordering in eigen labels
    /// (Q checks); empty when no ordering applies.
    pub ordering: Vec<usize>,
    pub verdict: Verdict,
    /// Set on failures of proven statements.
    pub critical: bool,
    /// Claim-specific payload; never null on `fails`, names the unmet
    /// hypothesis on `not_applicable`.
    pub witness: Value,
    pub notes: String,
}

impl CheckReport {
    pub(crate) fn holds(check_id: CheckId, label: &str, ordering: &[usize], witness: Value) -> Self {
        Self::new(check_id, label, ordering, Verdict::Holds, witness, String::new())
    }

    pub(crate) fn fails(check_id: CheckId, label: &str, ordering: &[usize], witness: Value) -> Self {
        let mut report = Self::new(check_id, label, ordering, Verdict::Fails, witness, String::new());
        report.critical = check_id.is_proven_claim();
        report
    }

    pub(crate) fn not_applicable(check_id: CheckId, label: &str, ordering: &[usize], unmet: &str) -> Self {
        let witness = serde_json::json!({ "unmet_hypothesis": unmet });
        Self::new(check_id, label, ordering, Verdict::NotApplicable, witness, unmet.to_string())
    }

    fn new(check_id: CheckId, label: &str, ordering: &[usize], verdict: Verdict, witness: Value, notes: String) -> Self {
        Self { check_id, scheme_label: label.to_string(), ordering: ordering.to_vec(), verdict, critical: false, witness, notes }
    }

    pub(crate) fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }
}
