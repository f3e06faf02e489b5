//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use nalgebra::DMatrix;

use super::LinalgError;

/// Stop once the off-diagonal Frobenius norm falls below this fraction of
/// the input's Frobenius norm.
const OFF_DIAGONAL_RATIO: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Diagonalizes a real symmetric matrix by cyclic Jacobi rotations.
///
/// Only the symmetric part of `a` is used. Each sweep visits every
/// off-diagonal pair `(p, q)` in row order and annihilates it with a plane
/// rotation; the accumulated rotations form the eigenvector matrix.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<SymmetricEigen, LinalgError> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(LinalgError::NotSquare { rows: n, cols: a.ncols() });
    }
    // Row-major working copy, symmetrized.
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frobenius = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_RATIO * frobenius;
    let mut sweeps = 0;
    let mut off = off_diagonal_norm(n, &w);
    // Converge to the target, then polish with at most two extra sweeps;
    // quadratic convergence takes the remainder down to rounding level.
    let mut polish = 0;
    while frobenius > 0.0 && (off > target || (polish < 2 && off > f64::EPSILON * frobenius)) {
        if off <= target {
            polish += 1;
        }
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NotConverged { sweeps, off });
        }
        sweeps += 1;
        sweep(n, &mut w, &mut v);
        off = off_diagonal_norm(n, &w);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[i * n + i].total_cmp(&w[j * n + j]));
    let values = order.iter().map(|&i| w[i * n + i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[r * n + order[c]]);
    Ok(SymmetricEigen { values, vectors })
}

fn off_diagonal_norm(n: usize, w: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += w[i * n + j] * w[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// One cyclic sweep over all pairs `p < q` in row order.
fn sweep(n: usize, w: &mut [f64], v: &mut [f64]) {
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = w[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let app = w[p * n + p];
            let aqq = w[q * n + q];
            let theta = (aqq - app) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..n {
                if k == p || k == q {
                    continue;
                }
                let akp = w[k * n + p];
                let akq = w[k * n + q];
                let new_kp = c * akp - s * akq;
                let new_kq = s * akp + c * akq;
                w[k * n + p] = new_kp;
                w[p * n + k] = new_kp;
                w[k * n + q] = new_kq;
                w[q * n + k] = new_kq;
            }
            w[p * n + p] = app - t * apq;
            w[q * n + q] = aqq + t * apq;
            w[p * n + q] = 0.0;
            w[q * n + p] = 0.0;
            for k in 0..n {
                let vkp = v[k * n + p];
                let vkq = v[k * n + q];
                v[k * n + p] = c * vkp - s * vkq;
                v[k * n + q] = s * vkp + c * vkq;
            }
        }
    }
}
