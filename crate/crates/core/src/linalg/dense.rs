//! Rank, range and nullspace helpers built on nalgebra's SVD.

use nalgebra::DMatrix;

/// Largest absolute entry (0 for an empty matrix).
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

fn threshold(singular: &[f64], rel_tol: f64) -> f64 {
    let top = singular.iter().copied().fold(0.0, f64::max);
    rel_tol * top.max(1.0)
}

/// Numerical rank: singular values above `rel_tol * max(1, sigma_max)`.
pub fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let tol = threshold(sv.as_slice(), rel_tol);
    sv.iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn orthonormal_range(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let tol = threshold(svd.singular_values.as_slice(), rel_tol);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol)
        .collect();
    DMatrix::from_fn(rows, keep.len(), |r, c| u[(r, keep[c])])
}

/// Orthonormal basis (as columns) of `{ x : m x = 0 }`.
pub fn nullspace(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let cols = m.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    // Pad to at least square so that V^T is the full cols x cols factor.
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let tol = threshold(svd.singular_values.as_slice(), rel_tol);
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= tol)
        .collect();
    DMatrix::from_fn(cols, null.len(), |r, c| v_t[(null[c], r)])
}
