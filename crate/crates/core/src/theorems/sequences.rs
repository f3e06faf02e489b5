//! Predicates on integer sequences. All comparisons are exact.

use serde::Serialize;

/// Index `j` of the first rise after a descent (`s[j-1] < s[j]` following some
/// `s[i-1] > s[i]`), or `None` when the sequence is unimodal with ties allowed.
pub fn unimodality_violation<T: Ord>(s: &[T]) -> Option<usize> {
    let mut i = 0;
    while i + 1 < s.len() && s[i] <= s[i + 1] {
        i += 1;
    }
    while i + 1 < s.len() && s[i] >= s[i + 1] {
        i += 1;
    }
    (i + 1 < s.len()).then_some(i + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfViolation {
    pub index: usize,
    /// `"s_i <= s_{i+1}"` or `"s_i <= s_{D-i}"`.
    pub inequality: &'static str,
    pub lhs: u128,
    pub rhs: u128,
}

/// First failure of `s_i <= s_{i+1}` and `s_i <= s_{D-i}` over integers
/// `i < D/2`, where `D = s.len() - 1`.
pub fn first_half_violation(s: &[u128]) -> Option<HalfViolation> {
    let d = s.len().checked_sub(1)?;
    (0..s.len()).take_while(|&i| 2 * i < d).find_map(|i| {
        if s[i] > s[i + 1] {
            Some(HalfViolation { index: i, inequality: "s_i <= s_{i+1}", lhs: s[i], rhs: s[i + 1] })
        } else if s[i] > s[d - i] {
            Some(HalfViolation { index: i, inequality: "s_i <= s_{D-i}", lhs: s[i], rhs: s[d - i] })
        } else {
            None
        }
    })
}

/// `s_i^2 >= s_{i-1} s_{i+1}` for `0 < i < D`; returns the first failing `i`.
pub fn is_log_concave(s: &[u128]) -> Result<(), usize> {
    match (1..s.len().saturating_sub(1)).find(|&i| s[i] * s[i] < s[i - 1] * s[i + 1]) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unimodal_with_ties() {
        assert_eq!(unimodality_violation(&[1, 3, 3, 1]), None);
        assert_eq!(unimodality_violation(&[1, 1, 2]), None);
        assert_eq!(unimodality_violation(&[2, 2, 2]), None);
        assert_eq!(unimodality_violation::<u32>(&[]), None);
        assert_eq!(unimodality_violation(&[1, 2, 1, 2]), Some(3));
        assert_eq!(unimodality_violation(&[3, 1, 1, 2]), Some(3));
    }

    #[test]
    fn half_range_is_strict() {
        // D = 2: only i = 0 is checked, so m_1 > m_2 is allowed.
        assert_eq!(first_half_violation(&[1, 3, 2]), None);
        // D = 1: i = 0 only.
        assert_eq!(first_half_violation(&[1, 3]), None);
        assert_eq!(first_half_violation(&[4, 3]).unwrap().inequality, "s_i <= s_{i+1}");
        let v = first_half_violation(&[1, 5, 6, 4, 3]).unwrap();
        assert_eq!((v.index, v.inequality, v.lhs, v.rhs), (1, "s_i <= s_{D-i}", 5, 4));
    }

    #[test]
    fn log_concavity() {
        assert_eq!(is_log_concave(&[1, 3, 3, 1]), Ok(()));
        assert_eq!(is_log_concave(&[1, 1, 4]), Err(1));
    }

    fn reference_unimodal(s: &[u8]) -> bool {
        s.is_empty()
            || (0..s.len()).any(|p| s[..=p].windows(2).all(|w| w[0] <= w[1]) && s[p..].windows(2).all(|w| w[0] >= w[1]))
    }

    proptest! {
        #[test]
        fn matches_peak_definition(s in proptest::collection::vec(0u8..4, 0..8)) {
            prop_assert_eq!(unimodality_violation(&s).is_none(), reference_unimodal(&s));
        }

        #[test]
        fn log_concave_positive_implies_unimodal(s in proptest::collection::vec(1u128..50, 1..8)) {
            if is_log_concave(&s).is_ok() {
                prop_assert_eq!(unimodality_violation(&s), None);
            }
        }
    }
}
