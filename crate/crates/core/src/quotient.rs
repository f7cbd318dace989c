// SPDX-License-Identifier: Apache-2.0

//! Equivalence relations over genotypes and the distance they induce on
//! classes: `d~(x, y) = min over x' ~ x, y' ~ y of d(x', y')`.
//!
//! The functions here enumerate classes explicitly. They are the reference
//! oracles for the specialized distances and normalizers of each
//! representation, and they refuse to run when the enumeration would be
//! larger than a configured bound.

use alloc::vec::Vec;

use crate::metric::{segment_contains, Metric};
use crate::{Error, Result};

/// Upper bound on representative pairs (or class members, for
/// [`normalize`]) the brute-force paths will enumerate.
pub const DEFAULT_PAIR_BOUND: u128 = 1_000_000;

/// An equivalence relation with finite, enumerable classes.
pub trait EquivRelation<P> {
    fn same_class(&self, a: &P, b: &P) -> bool;

    /// Number of entries [`class_members`](Self::class_members) will return.
    fn class_size(&self, x: &P) -> u128;

    /// The class of `x` in canonical enumeration order. May repeat members.
    fn class_members(&self, x: &P) -> Vec<P>;
}

/// Every point is alone in its class.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityRelation;

impl<P: Clone + PartialEq> EquivRelation<P> for IdentityRelation {
    fn same_class(&self, a: &P, b: &P) -> bool {
        a == b
    }

    fn class_size(&self, _: &P) -> u128 {
        1
    }

    fn class_members(&self, x: &P) -> Vec<P> {
        alloc::vec![x.clone()]
    }
}

pub fn quotient_distance_bruteforce<P, M, R>(x: &P, y: &P, base: &M, rel: &R) -> Result<u64>
where
    M: Metric<P> + ?Sized,
    R: EquivRelation<P> + ?Sized,
{
    quotient_distance_bounded(x, y, base, rel, DEFAULT_PAIR_BOUND)
}

/// Minimum of `base` over all representative pairs, refusing to enumerate
/// more than `bound` pairs.
pub fn quotient_distance_bounded<P, M, R>(x: &P, y: &P, base: &M, rel: &R, bound: u128) -> Result<u64>
where
    M: Metric<P> + ?Sized,
    R: EquivRelation<P> + ?Sized,
{
    let size = rel.class_size(x).saturating_mul(rel.class_size(y));
    if size > bound {
        return Err(Error::Capacity {
            what: "quotient distance representative pairs",
            size,
            bound,
        });
    }
    let xs = rel.class_members(x);
    let ys = rel.class_members(y);
    let mut best = u64::MAX;
    for a in &xs {
        for b in &ys {
            best = best.min(base.distance(a, b)?);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// The induced distance on classes, evaluated on representatives.
#[derive(Debug, Clone)]
pub struct QuotientDistance<M, R> {
    pub base: M,
    pub rel: R,
    pub bound: u128,
}

impl<M, R> QuotientDistance<M, R> {
    pub fn new(base: M, rel: R) -> Self {
        QuotientDistance {
            base,
            rel,
            bound: DEFAULT_PAIR_BOUND,
        }
    }
}

impl<P, M: Metric<P>, R: EquivRelation<P>> Metric<P> for QuotientDistance<M, R> {
    fn distance(&self, a: &P, b: &P) -> Result<u64> {
        quotient_distance_bounded(a, b, &self.base, &self.rel, self.bound)
    }
}

/// Segment membership between classes. `qd` may be a [`QuotientDistance`] or
/// any exact specialized quotient distance.
pub fn quotient_segment_contains<P, M: Metric<P> + ?Sized>(x: &P, y: &P, z: &P, qd: &M) -> Result<bool> {
    segment_contains(x, y, z, qd)
}

/// The member of `p2`'s class closest to `p1` under `base`. Ties go to the
/// earliest member in the relation's enumeration order.
pub fn normalize<P, M, R>(p1: &P, p2: &P, base: &M, rel: &R) -> Result<P>
where
    P: Clone,
    M: Metric<P> + ?Sized,
    R: EquivRelation<P> + ?Sized,
{
    let size = rel.class_size(p2);
    if size > DEFAULT_PAIR_BOUND {
        return Err(Error::Capacity {
            what: "normalization class",
            size,
            bound: DEFAULT_PAIR_BOUND,
        });
    }
    let mut best: Option<(u64, P)> = None;
    for m in rel.class_members(p2) {
        let d = base.distance(p1, &m)?;
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            let done = d == 0;
            best = Some((d, m));
            if done {
                break;
            }
        }
    }
    best.map(|(_, m)| m)
        .ok_or_else(|| Error::invalid("normalization class", "empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Hamming;
    use alloc::vec;

    /// Parity classes on small integers, for exercising the generic paths.
    struct Mod2(u64);

    impl EquivRelation<u64> for Mod2 {
        fn same_class(&self, a: &u64, b: &u64) -> bool {
            a % 2 == b % 2
        }
        fn class_size(&self, _: &u64) -> u128 {
            u128::from(self.0 / 2)
        }
        fn class_members(&self, x: &u64) -> Vec<u64> {
            (0..self.0).filter(|v| v % 2 == x % 2).collect()
        }
    }

    fn absdiff(a: &u64, b: &u64) -> Result<u64> {
        Ok(a.abs_diff(*b))
    }

    #[test]
    fn same_class_is_distance_zero() {
        assert_eq!(quotient_distance_bruteforce(&2, &6, &absdiff, &Mod2(10)).unwrap(), 0);
        assert_eq!(quotient_distance_bruteforce(&2, &7, &absdiff, &Mod2(10)).unwrap(), 1);
    }

    #[test]
    fn capacity_error_names_bound() {
        let err = quotient_distance_bounded(&0, &1, &absdiff, &Mod2(100), 100).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                what: "quotient distance representative pairs",
                size: 2500,
                bound: 100
            }
        );
    }

    #[test]
    fn identity_relation_leaves_parent_unchanged() {
        let p1 = vec![0u8, 0, 0, 0];
        let p2 = vec![1u8, 0, 1, 0];
        assert_eq!(normalize(&p1, &p2, &Hamming, &IdentityRelation).unwrap(), p2);
        assert_eq!(
            quotient_distance_bruteforce(&p1, &p2, &Hamming, &IdentityRelation).unwrap(),
            2
        );
    }

    #[test]
    fn normalize_picks_first_closest_member() {
        // Class of 9 under Mod2(10): 1,3,5,7,9. Closest to 4 are 3 and 5; 3 comes first.
        assert_eq!(normalize(&4, &9, &absdiff, &Mod2(10)).unwrap(), 3);
    }

    #[test]
    fn quotient_distance_is_a_metric_implementation() {
        let qd = QuotientDistance::new(absdiff, Mod2(10));
        assert_eq!(qd.distance(&3, &8).unwrap(), 1);
        assert!(quotient_segment_contains(&3, &8, &5, &qd).unwrap());
    }
}
