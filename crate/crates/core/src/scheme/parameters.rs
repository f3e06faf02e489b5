//! Parameter-only schemes: exact eigenmatrices without materializing vertices.

use num::{BigInt, BigRational, One, Zero};

use super::SchemeError;
use crate::linalg::RationalMatrix;

/// Exact first and second eigenmatrices of a scheme that is never built
/// vertex by vertex.
///
/// Rows of `p` index primitive idempotents and columns index relations, so
/// `A_j E_i = P[i][j] E_i`; row 0 holds the valencies. `q = n * p^{-1}` has
/// the multiplicities in row 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeParameters {
    classes: usize,
    n: BigInt,
    p: RationalMatrix,
    q: RationalMatrix,
    label: String,
}

impl SchemeParameters {
    /// Validates `p` (square, invertible) and derives `q`.
    pub fn new(n: BigInt, p: RationalMatrix, label: impl Into<String>) -> Result<Self, SchemeError> {
        if p.nrows() != p.ncols() || p.nrows() < 2 {
            return Err(SchemeError::InvalidParameters("eigenmatrix must be square with D >= 1".into()));
        }
        let inv = p
            .inverse()
            .map_err(|_| SchemeError::InvalidParameters("eigenmatrix is singular".into()))?;
        let q = inv.scale(&BigRational::from_integer(n.clone()));
        Ok(Self { classes: p.nrows() - 1, n, p, q, label: label.into() })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn p(&self) -> &RationalMatrix {
        &self.p
    }

    pub fn q(&self) -> &RationalMatrix {
        &self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn valencies(&self) -> Vec<BigRational> {
        self.p.row(0).to_vec()
    }

    pub fn multiplicities(&self) -> Vec<BigRational> {
        self.q.row(0).to_vec()
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Eberlein polynomial: the eigenvalue of the distance-`j` relation of
/// `J(v, k)` on the `i`-th eigenspace.
pub fn eberlein(v: usize, k: usize, i: usize, j: usize) -> BigInt {
    let (v, k, i, j) = (v as i64, k as i64, i as i64, j as i64);
    (0..=j).fold(BigInt::zero(), |acc, h| {
        let term = binomial(i, h) * binomial(k - i, j - h) * binomial(v - k - i, j - h);
        if h % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Exact eigenmatrices of the Johnson scheme `J(v, k)`, idempotents in the
/// natural order `0..=k`.
pub fn johnson_parameters(v: usize, k: usize) -> Result<SchemeParameters, SchemeError> {
    if k == 0 || 2 * k > v {
        return Err(SchemeError::InvalidParameters(format!(
            "johnson parameters need 1 <= k <= v/2, got v={v}, k={k}"
        )));
    }
    let p = RationalMatrix::from_fn(k + 1, k + 1, |i, j| BigRational::from_integer(eberlein(v, k, i, j)));
    let n = binomial(v as i64, k as i64);
    let params = SchemeParameters::new(n, p, format!("J({v},{k})"))?;
    for (i, m) in params.multiplicities().iter().enumerate() {
        let expected = binomial(v as i64, i as i64) - binomial(v as i64, i as i64 - 1);
        if *m != BigRational::from_integer(expected) {
            return Err(SchemeError::InvalidParameters(format!("multiplicity m_{i} = {m} is not C(v,i) - C(v,i-1)")));
        }
    }
    Ok(params)
}
