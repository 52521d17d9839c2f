//! Sidon-type (B₂ / B₃) sets and the difference-set rigidity used to classify
//! partners of signals with lacunary support.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::seqcore::{difference_set, SupportSet};

/// Largest set accepted by the sum-uniqueness tests.
pub const MAX_SET_SIZE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `Λ' = Λ - m`
    Direct,
    /// `Λ' = m - Λ`
    Reflected,
}

fn check_size(set: &SupportSet) -> Result<()> {
    if set.len() > MAX_SET_SIZE {
        return Err(Error::SetTooLarge {
            size: set.len(),
            cap: MAX_SET_SIZE,
        });
    }
    Ok(())
}

/// Every `h`-fold sum `n₁ + … + n_h` (non-decreasing indices) is distinct.
fn sums_unique(set: &SupportSet, order: usize) -> bool {
    fn walk(e: &[i64], start: usize, left: usize, acc: i64, seen: &mut HashSet<i64>) -> bool {
        if left == 0 {
            return seen.insert(acc);
        }
        (start..e.len()).all(|i| walk(e, i, left - 1, acc + e[i], seen))
    }
    let mut seen = HashSet::new();
    walk(set.elems(), 0, order, 0, &mut seen)
}

/// B₂ (Sidon) test: pairwise sums are unique up to order.
pub fn is_b2(set: &SupportSet) -> Result<bool> {
    check_size(set)?;
    Ok(sums_unique(set, 2))
}

/// B₃ test: triple sums are unique up to order.
pub fn is_b3(set: &SupportSet) -> Result<bool> {
    check_size(set)?;
    Ok(sums_unique(set, 3))
}

/// Given a B₃ set `Λ` and `Λ'` with the same difference set, finds `m` with
/// `Λ' = Λ - m` or `Λ' = m - Λ`. The direct orientation wins ties.
pub fn recover_shift(lambda: &SupportSet, lambda_p: &SupportSet) -> Result<Option<(Orientation, i64)>> {
    if !is_b3(lambda)? {
        return Err(Error::HypothesisViolated("Λ is not a B₃ set".into()));
    }
    check_size(lambda_p)?;
    if lambda.is_empty() || lambda_p.is_empty() {
        return Ok(None);
    }
    if difference_set(lambda) != difference_set(lambda_p) {
        return Ok(None);
    }
    let (min, max) = (lambda.min().unwrap(), lambda.max().unwrap());
    let min_p = lambda_p.min().unwrap();
    let m = min - min_p;
    if &lambda.translate(-m) == lambda_p {
        return Ok(Some((Orientation::Direct, m)));
    }
    let m = max + min_p;
    if &lambda.reflect_about(m) == lambda_p {
        return Ok(Some((Orientation::Reflected, m)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> SupportSet {
        SupportSet::new(v.iter().copied())
    }

    #[test]
    fn b2_examples() {
        let powers = SupportSet::new((0..=10).map(|j| 1i64 << j));
        assert!(is_b2(&powers).unwrap());
        assert!(!is_b2(&set(&[0, 1, 2])).unwrap());
        assert!(is_b2(&set(&[0, 1])).unwrap());
    }

    #[test]
    fn b3_examples() {
        assert!(is_b3(&set(&[0, 1, 5])).unwrap());
        assert!(!is_b3(&set(&[0, 1, 2])).unwrap());
        assert!(is_b3(&set(&[7])).unwrap());
        // {0,1,3} is B₂ but 0+0+3 = 1+1+1
        assert!(is_b2(&set(&[0, 1, 3])).unwrap());
        assert!(!is_b3(&set(&[0, 1, 3])).unwrap());
    }

    #[test]
    fn size_cap() {
        let big = SupportSet::new(0..40);
        assert!(matches!(is_b2(&big), Err(Error::SetTooLarge { size: 40, cap: 32 })));
    }

    #[test]
    fn recover_examples() {
        let l = set(&[0, 1, 5]);
        assert_eq!(
            recover_shift(&l, &set(&[-3, -2, 2])).unwrap(),
            Some((Orientation::Direct, 3))
        );
        assert_eq!(
            recover_shift(&l, &set(&[-1, 3, 4])).unwrap(),
            Some((Orientation::Reflected, 4))
        );
        assert_eq!(recover_shift(&l, &set(&[0, 2, 5])).unwrap(), None);
        assert!(matches!(
            recover_shift(&set(&[0, 1, 2]), &set(&[0, 1, 2])),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn symmetric_set_prefers_direct() {
        // symmetric B₃ sets have at most two points; both witnesses exist
        let l = set(&[0, 5]);
        assert!(is_b3(&l).unwrap());
        assert_eq!(recover_shift(&l, &l).unwrap(), Some((Orientation::Direct, 0)));
        let l = set(&[0, 2, 7]);
        assert!(is_b3(&l).unwrap());
        assert_eq!(
            recover_shift(&l, &l.reflect_about(7)).unwrap(),
            Some((Orientation::Reflected, 7))
        );
    }
}
