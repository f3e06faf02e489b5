//! Named scheme families.

use super::{Scheme, SchemeError};

/// Default cap on the number of materialized vertices.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// A named family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `H(d, q)`: words of length `d` over `q` letters, class = Hamming distance.
    Hamming { d: usize, q: usize },
    /// `J(v, k)`: `k`-subsets of a `v`-set, class = `k - |S ∩ T|`.
    Johnson { v: usize, k: usize },
    /// The `m`-cycle with circular distance.
    Cycle { m: usize },
    /// `K_n`, the one-class scheme.
    Complete { n: usize },
}

impl Family {
    pub fn label(&self) -> String {
        match *self {
            Family::Hamming { d, q } => format!("H({d},{q})"),
            Family::Johnson { v, k } => format!("J({v},{k})"),
            Family::Cycle { m } => format!("C_{m}"),
            Family::Complete { n } => format!("K_{n}"),
        }
    }

    /// Number of vertices, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<u128> {
        match *self {
            Family::Hamming { d, q } => (q as u128).checked_pow(u32::try_from(d).ok()?),
            Family::Johnson { v, k } => binomial(v, k),
            Family::Cycle { m } => Some(m as u128),
            Family::Complete { n } => Some(n as u128),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Scheme, SchemeError> {
        self.check_parameters()?;
        let vertices = self.vertex_count().unwrap_or(u128::MAX);
        if vertices > cap as u128 {
            return Err(SchemeError::SizeCapExceeded { vertices, cap });
        }
        let n = vertices as usize;
        let table = match *self {
            Family::Hamming { d, q } => {
                let words: Vec<Vec<usize>> = (0..n).map(|w| digits(w, q, d)).collect();
                table_from(n, |x, y| words[x].iter().zip(&words[y]).filter(|(a, b)| a != b).count())
            }
            Family::Johnson { v, k } => {
                let subsets = k_subsets(v, k);
                table_from(n, |x, y| {
                    let common = subsets[x].iter().filter(|e| subsets[y].contains(e)).count();
                    k - common
                })
            }
            Family::Cycle { m } => table_from(n, |x, y| {
                let d = x.abs_diff(y);
                d.min(m - d)
            }),
            Family::Complete { .. } => table_from(n, |x, y| usize::from(x != y)),
        };
        Ok(Scheme::from_flat(n, table)?.with_label(self.label()))
    }

    fn check_parameters(&self) -> Result<(), SchemeError> {
        let bad = |msg: String| Err(SchemeError::InvalidParameters(msg));
        match *self {
            Family::Hamming { d, q } if d == 0 || q < 2 => bad(format!("hamming needs d >= 1 and q >= 2, got d={d}, q={q}")),
            Family::Johnson { v, k } if k == 0 || 2 * k > v => {
                bad(format!("johnson needs 1 <= k <= v/2, got v={v}, k={k}"))
            }
            Family::Cycle { m } if m < 3 => bad(format!("cycle needs m >= 3, got {m}")),
            Family::Complete { n } if n < 2 => bad(format!("complete scheme needs n >= 2, got {n}")),
            _ => Ok(()),
        }
    }
}

fn table_from(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            t.push(f(x, y));
        }
    }
    t
}

fn digits(mut w: usize, q: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = w % q;
        w /= q;
    }
    out
}

/// All `k`-subsets of `0..v` in lexicographic order.
fn k_subsets(v: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(pos) = (0..k).rev().find(|&i| current[i] < v - k + i) else {
            return out;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn hamming(d: usize, q: usize) -> Result<Scheme, SchemeError> {
    Family::Hamming { d, q }.build(DEFAULT_VERTEX_CAP)
}

pub fn johnson(v: usize, k: usize) -> Result<Scheme, SchemeError> {
    Family::Johnson { v, k }.build(DEFAULT_VERTEX_CAP)
}

pub fn cycle(m: usize) -> Result<Scheme, SchemeError> {
    Family::Cycle { m }.build(DEFAULT_VERTEX_CAP)
}

pub fn complete(n: usize) -> Result<Scheme, SchemeError> {
    Family::Complete { n }.build(DEFAULT_VERTEX_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_examples() {
        let k2 = hamming(1, 2).unwrap();
        assert_eq!((k2.n(), k2.classes()), (2, 1));
        let cube = hamming(3, 2).unwrap();
        assert_eq!(cube.n(), 8);
        assert_eq!(cube.valencies(), &[1, 3, 3, 1]);
        assert_eq!(cube.p(1, 1, 2), 2);
        let rook = hamming(2, 3).unwrap();
        assert_eq!(rook.valencies(), &[1, 4, 4]);
    }

    #[test]
    fn johnson_examples() {
        let j42 = johnson(4, 2).unwrap();
        assert_eq!((j42.n(), j42.classes()), (6, 2));
        assert_eq!(j42.valencies(), &[1, 4, 1]);
        assert_eq!(johnson(5, 2).unwrap().valencies(), &[1, 6, 3]);
        let k2 = johnson(2, 1).unwrap();
        assert_eq!((k2.n(), k2.classes()), (2, 1));
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle(3).unwrap().classes(), 1);
        assert_eq!(cycle(5).unwrap().valencies(), &[1, 2, 2]);
        assert_eq!(cycle(6).unwrap().valencies(), &[1, 2, 2, 1]);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(johnson(4, 3), Err(SchemeError::InvalidParameters(_))));
        assert!(matches!(johnson(4, 0), Err(SchemeError::InvalidParameters(_))));
        assert!(matches!(cycle(2), Err(SchemeError::InvalidParameters(_))));
        assert!(matches!(hamming(2, 1), Err(SchemeError::InvalidParameters(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let err = Family::Hamming { d: 13, q: 2 }.build(DEFAULT_VERTEX_CAP).unwrap_err();
        assert_eq!(err, SchemeError::SizeCapExceeded { vertices: 8192, cap: 4096 });
        assert!(Family::Johnson { v: 16, k: 4 }.build(1000).is_err());
        assert!(Family::Hamming { d: 3, q: 2 }.build(8).is_ok());
    }

    #[test]
    fn subsets_and_binomials() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(4, 2)[0], vec![0, 1]);
        assert_eq!(binomial(16, 4), Some(1820));
        assert_eq!(binomial(3, 5), Some(0));
    }
}
