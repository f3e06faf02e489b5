//! Symmetric association schemes given by a class table.
//!
//! A [`Scheme`] is validated once at construction: the identity relation is
//! class 0, the table is symmetric, every class is attained, and the
//! intersection numbers `p^k_ij` are the same for every pair in `R_k`.

mod families;
mod io;
mod parameters;

pub use families::{complete, cycle, hamming, johnson, Family, DEFAULT_VERTEX_CAP};
pub(crate) use families::binomial;
pub use io::{parse_scheme, read_scheme, write_scheme};
pub use parameters::{johnson_parameters, SchemeParameters};

use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("class table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("scheme needs at least two vertices")]
    TooSmall,
    #[error("R_0 is not the identity relation at ({x}, {y})")]
    NotReflexive { x: usize, y: usize },
    #[error("class table is not symmetric at ({x}, {y})")]
    NotSymmetric { x: usize, y: usize },
    #[error("relation R_{class} is empty")]
    EmptyClass { class: usize },
    #[error(
        "intersection number p^{k}_{{{i},{j}}} is not well defined: pair ({x}, {y}) gives {found}, expected {expected}"
    )]
    InconsistentIntersectionNumbers {
        i: usize,
        j: usize,
        k: usize,
        x: usize,
        y: usize,
        expected: u64,
        found: u64,
    },
    #[error("scheme would have {vertices} vertices, above the cap of {cap}")]
    SizeCapExceeded { vertices: u128, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Intersection numbers `p^k_ij` stored as a dense `(D+1)^3` tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    size: usize,
    data: Vec<u64>,
}

impl IntersectionNumbers {
    /// `p^k_ij`: for `xy` in `R_k`, the number of `z` with `xz` in `R_i` and
    /// `zy` in `R_j`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(k * self.size + i) * self.size + j]
    }

    /// Number of classes plus one.
    pub fn size(&self) -> usize {
        self.size
    }
}

/// A validated symmetric association scheme.
#[derive(Clone, Debug)]
pub struct Scheme {
    n: usize,
    classes: usize,
    class_of: Vec<usize>,
    valencies: Vec<usize>,
    intersection: IntersectionNumbers,
    label: String,
}

impl PartialEq for Scheme {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.classes == other.classes && self.class_of == other.class_of
    }
}

impl Scheme {
    /// Builds a scheme from a square class table.
    pub fn from_class_matrix(labels: &[Vec<usize>]) -> Result<Self, SchemeError> {
        let n = labels.len();
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in labels.iter().enumerate() {
            if entries.len() != n {
                return Err(SchemeError::NotSquare { row, len: entries.len(), n });
            }
            flat.extend_from_slice(entries);
        }
        Self::from_flat(n, flat)
    }

    /// Builds a scheme from a row-major `n * n` class table.
    pub fn from_flat(n: usize, class_of: Vec<usize>) -> Result<Self, SchemeError> {
        if class_of.len() != n * n {
            return Err(SchemeError::NotSquare { row: class_of.len() / n.max(1), len: class_of.len(), n });
        }
        if n < 2 {
            return Err(SchemeError::TooSmall);
        }
        for x in 0..n {
            for y in 0..n {
                let c = class_of[x * n + y];
                if (x == y) != (c == 0) {
                    return Err(SchemeError::NotReflexive { x, y });
                }
                if c != class_of[y * n + x] {
                    return Err(SchemeError::NotSymmetric { x, y });
                }
            }
        }
        let classes = class_of.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; classes + 1];
        for &c in &class_of {
            seen[c] = true;
        }
        if let Some(class) = seen.iter().position(|s| !s) {
            return Err(SchemeError::EmptyClass { class });
        }
        let intersection = compute_intersection_numbers(n, classes, &class_of)?;
        let valencies = (0..=classes).map(|i| intersection.get(i, i, 0) as usize).collect();
        Ok(Self { n, classes, class_of, valencies, intersection, label: "custom".into() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of vertices `|X|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes `D`.
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.n + y]
    }

    /// Row `x` of the class table.
    pub fn row(&self, x: usize) -> &[usize] {
        &self.class_of[x * self.n..(x + 1) * self.n]
    }

    pub fn class_table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    pub fn intersection_numbers(&self) -> &IntersectionNumbers {
        &self.intersection
    }

    /// `p^k_ij`.
    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        self.intersection.get(i, j, k)
    }

    /// The 0/1 associate matrix `A_i` as an integer matrix.
    pub fn associate_matrix_exact(&self, i: usize) -> DMatrix<i64> {
        DMatrix::from_fn(self.n, self.n, |x, y| i64::from(self.class_of(x, y) == i))
    }

    /// The 0/1 associate matrix `A_i`.
    pub fn associate_matrix(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |x, y| if self.class_of(x, y) == i { 1.0 } else { 0.0 })
    }

    /// `sum_j coeffs[j] * A_j`.
    pub fn combination(&self, coeffs: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |x, y| coeffs[self.class_of(x, y)])
    }

    /// Products `A_j * m` for every class `j`, computed in one pass over the
    /// class table.
    pub fn apply_all(&self, m: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
        let cols = m.ncols();
        let mut out = vec![DMatrix::zeros(self.n, cols); self.classes + 1];
        for x in 0..self.n {
            for (z, &j) in self.row(x).iter().enumerate() {
                let target = &mut out[j];
                for c in 0..cols {
                    target[(x, c)] += m[(z, c)];
                }
            }
        }
        out
    }
}

/// Triple-loop count over every pair, aborting at the first pair whose
/// counting vector disagrees with the first pair seen in the same class.
fn compute_intersection_numbers(
    n: usize,
    classes: usize,
    class_of: &[usize],
) -> Result<IntersectionNumbers, SchemeError> {
    let size = classes + 1;
    let mut reference: Vec<Option<Vec<u64>>> = vec![None; size];
    let mut counts = vec![0u64; size * size];
    for x in 0..n {
        let row_x = &class_of[x * n..(x + 1) * n];
        for y in 0..n {
            let k = row_x[y];
            counts.iter_mut().for_each(|c| *c = 0);
            // symmetric table: column y equals row y
            let row_y = &class_of[y * n..(y + 1) * n];
            for z in 0..n {
                counts[row_x[z] * size + row_y[z]] += 1;
            }
            match &reference[k] {
                None => reference[k] = Some(counts.clone()),
                Some(expected) => {
                    if let Some(idx) = (0..size * size).find(|&idx| expected[idx] != counts[idx]) {
                        return Err(SchemeError::InconsistentIntersectionNumbers {
                            i: idx / size,
                            j: idx % size,
                            k,
                            x,
                            y,
                            expected: expected[idx],
                            found: counts[idx],
                        });
                    }
                }
            }
        }
    }
    let mut data = vec![0u64; size * size * size];
    for (k, counts) in reference.into_iter().enumerate() {
        let counts = counts.expect("every class is nonempty");
        data[k * size * size..(k + 1) * size * size].copy_from_slice(&counts);
    }
    Ok(IntersectionNumbers { size, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Vec<Vec<usize>> {
        (0..5)
            .map(|x: usize| (0..5).map(|y: usize| ((x + 5 - y) % 5).min((y + 5 - x) % 5)).collect())
            .collect()
    }

    #[test]
    fn complete_graph_k4() {
        let t: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| usize::from(x != y)).collect()).collect();
        let s = Scheme::from_class_matrix(&t).unwrap();
        assert_eq!(s.classes(), 1);
        assert_eq!(s.p(1, 1, 1), 2);
        assert_eq!(s.p(1, 1, 0), 3);
        assert_eq!(s.valencies(), &[1, 3]);
    }

    #[test]
    fn pentagon_numbers() {
        let s = Scheme::from_class_matrix(&pentagon()).unwrap();
        assert_eq!(s.classes(), 2);
        assert_eq!(s.p(1, 1, 2), 1);
        assert_eq!(s.p(1, 1, 1), 0);
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let mut t = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        t[1][0] = 2;
        t[0][1] = 1;
        assert_eq!(Scheme::from_class_matrix(&t), Err(SchemeError::NotSymmetric { x: 0, y: 1 }));
    }

    #[test]
    fn reflexivity_errors() {
        let t = vec![vec![1, 1], vec![1, 0]];
        assert_eq!(Scheme::from_class_matrix(&t), Err(SchemeError::NotReflexive { x: 0, y: 0 }));
        let t = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(Scheme::from_class_matrix(&t), Err(SchemeError::NotReflexive { x: 0, y: 1 }));
    }

    #[test]
    fn empty_class() {
        let t = vec![vec![0, 2], vec![2, 0]];
        assert_eq!(Scheme::from_class_matrix(&t), Err(SchemeError::EmptyClass { class: 1 }));
    }

    #[test]
    fn ragged_and_tiny_tables() {
        let t = vec![vec![0, 1], vec![1]];
        assert!(matches!(Scheme::from_class_matrix(&t), Err(SchemeError::NotSquare { row: 1, .. })));
        assert_eq!(Scheme::from_class_matrix(&[vec![0]]), Err(SchemeError::TooSmall));
    }

    #[test]
    fn path_graph_distances_are_not_a_scheme() {
        // path 0-1-2: the pair (0,1) and the pair (1,0) see different
        // counting vectors because the valencies of 0 and 1 differ.
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        match Scheme::from_class_matrix(&t) {
            Err(SchemeError::InconsistentIntersectionNumbers { k, x, y, .. }) => assert_eq!((k, x, y), (1, 1, 0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn apply_all_matches_dense_products() {
        let s = Scheme::from_class_matrix(&pentagon()).unwrap();
        let m = DMatrix::from_fn(5, 2, |r, c| (r * 3 + c) as f64);
        let all = s.apply_all(&m);
        for (j, prod) in all.iter().enumerate() {
            assert_eq!(prod, &(s.associate_matrix(j) * &m));
        }
    }
}
