//! Exact Krein parameters for parameter-only schemes.

use num::{BigRational, Zero};

use super::{is_tridiagonal_ordering, SpectraError};
use crate::scheme::SchemeParameters;

/// Exact `q^k_ij`, same layout as [`super::KreinTensor`].
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTensor {
    size: usize,
    data: Vec<BigRational>,
}

impl RationalTensor {
    /// `q^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.data[(k * self.size + i) * self.size + j]
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// `q^k_ij = (1/n) sum_l Q_li Q_lj P_kl` in exact arithmetic.
pub fn krein_exact(params: &SchemeParameters) -> RationalTensor {
    let size = params.classes() + 1;
    let (p, q) = (params.p(), params.q());
    let n = BigRational::from_integer(params.n().clone());
    let mut data = Vec::with_capacity(size * size * size);
    for k in 0..size {
        for i in 0..size {
            for j in 0..size {
                let sum = (0..size).fold(BigRational::zero(), |acc, l| acc + &q[(l, i)] * &q[(l, j)] * &p[(k, l)]);
                data.push(sum / &n);
            }
        }
    }
    RationalTensor { size, data }
}

/// Exact dual intersection numbers for the natural idempotent order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDualNumbers {
    pub label: String,
    pub ordering: Vec<usize>,
    pub multiplicities: Vec<BigRational>,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

/// Verifies (exactly) that the natural order `E_0, ..., E_D` of `params` is
/// Q-polynomial and returns `a*`, `b*`, `c*`.
pub fn natural_dual_numbers(params: &SchemeParameters) -> Result<ExactDualNumbers, SpectraError> {
    let krein = krein_exact(params);
    let size = krein.size();
    let ordering: Vec<usize> = (0..size).collect();
    if !is_tridiagonal_ordering(&ordering, |g, j, k| !krein.get(g, j, k).is_zero()) {
        return Err(SpectraError::NotQPolynomial { ordering });
    }
    let zero = BigRational::zero;
    Ok(ExactDualNumbers {
        label: params.label().to_string(),
        multiplicities: params.multiplicities(),
        a: (0..size).map(|i| krein.get(1, i, i).clone()).collect(),
        b: (0..size).map(|i| if i + 1 < size { krein.get(1, i + 1, i).clone() } else { zero() }).collect(),
        c: (0..size).map(|i| if i > 0 { krein.get(1, i - 1, i).clone() } else { zero() }).collect(),
        ordering,
    })
}
