use nalgebra::DMatrix;

use super::{EigenData, SpectraError};
use crate::linalg::max_abs;
use crate::tolerance::Tolerances;

/// Krein parameters `q^k_ij`, defined by
/// `E_i ∘ E_j = (1/n) sum_k q^k_ij E_k` (entrywise product).
#[derive(Clone, Debug, PartialEq)]
pub struct KreinTensor {
    size: usize,
    data: Vec<f64>,
}

impl KreinTensor {
    pub(crate) fn from_fn(size: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; size * size * size];
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    data[(k * size + i) * size + j] = f(i, j, k);
                }
            }
        }
        Self { size, data }
    }

    /// `q^k_ij`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(k * self.size + i) * self.size + j]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Relabels so that new label `a` refers to old label `ordering[a]`.
    pub fn reindexed(&self, ordering: &[usize]) -> Self {
        Self::from_fn(self.size, |i, j, k| self.get(ordering[i], ordering[j], ordering[k]))
    }
}

/// `q^k_ij = (1/n) sum_l Q_li Q_lj P_kl`, from the entrywise product of
/// `E_i = (1/n) sum_l Q_li A_l` and `A_l = sum_k P_kl E_k`.
pub fn krein_parameters(eigen: &EigenData, tol: &Tolerances) -> Result<KreinTensor, SpectraError> {
    let size = eigen.classes() + 1;
    let n = eigen.n as f64;
    let (p, q) = (&eigen.p, &eigen.q);
    let tensor = KreinTensor::from_fn(size, |i, j, k| {
        (0..size).map(|l| q[(l, i)] * q[(l, j)] * p[(k, l)]).sum::<f64>() / n
    });
    for k in 0..size {
        for i in 0..size {
            for j in 0..size {
                let value = tensor.get(i, j, k);
                if value < -100.0 * tol.krein {
                    return Err(SpectraError::NegativeKreinParameter { i, j, k, value });
                }
            }
        }
    }
    Ok(tensor)
}

/// `max_{i,j} |E_i ∘ E_j - (1/n) sum_k q^k_ij E_k|`, max norm.
pub fn krein_residual(eigen: &EigenData, krein: &KreinTensor) -> f64 {
    let size = krein.size();
    let n = eigen.n as f64;
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in i..size {
            let mut r: DMatrix<f64> = eigen.idempotents[i].component_mul(&eigen.idempotents[j]);
            for k in 0..size {
                r -= &eigen.idempotents[k] * (krein.get(i, j, k) / n);
            }
            worst = worst.max(max_abs(&r));
        }
    }
    worst
}
