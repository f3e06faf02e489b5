//! Numerical thresholds shared by the floating-point pipeline.

use serde::{Deserialize, Serialize};

/// Thresholds used by the eigensolver, Krein tests and module profiles.
///
/// The defaults are tuned for desk-scale schemes (a few hundred vertices at
/// most) and double precision throughout.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative gap separating two eigenvalue groups of the generic
    /// Bose–Mesner element.
    pub eigen_gap: f64,
    /// Max-norm residual allowed when checking that each `A_j` acts as a
    /// scalar on a common eigenspace, and for idempotent certificates.
    pub idempotent: f64,
    /// Krein parameters below `-100 * krein` are reported as errors.
    pub krein: f64,
    /// Zero test for Krein tridiagonality, scaled by `max(1, m_1)`.
    pub krein_zero: f64,
    /// Singular values above `rank * max(1, sigma_max)` count toward rank.
    pub rank: f64,
    /// Max-norm invariance defect accepted for a T-module basis.
    pub invariance: f64,
    /// Distance from an integer accepted for traces of idempotents.
    pub integer: f64,
    /// Relative gap used when grouping eigenvalues of generic central and
    /// centralizer elements.
    pub split_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen_gap: 1e-8,
            idempotent: 1e-8,
            krein: 1e-8,
            krein_zero: 1e-7,
            rank: 1e-7,
            invariance: 1e-7,
            integer: 1e-6,
            split_gap: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), String> {
        let all = [
            ("eigen_gap", self.eigen_gap),
            ("idempotent", self.idempotent),
            ("krein", self.krein),
            ("krein_zero", self.krein_zero),
            ("rank", self.rank),
            ("invariance", self.invariance),
            ("integer", self.integer),
            ("split_gap", self.split_gap),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("tolerance `{name}` must be positive, got {v}"));
            }
        }
        Ok(())
    }
}
