// SPDX-License-Identifier: Apache-2.0

//! Grouping problems encoded as k-ary label vectors.
//!
//! Two vectors that differ only by a renaming of the group labels describe
//! the same partition. The labeling-independent distance is the Hamming
//! distance after the best renaming, found as a maximum-weight assignment
//! on the k x k agreement matrix rather than by trying all k! renamings.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::assignment::max_weight_assignment;
use crate::combinatorics::{factorial, permutations};
use crate::crossover::BaseCrossover;
use crate::metric::{hamming, Crossover, Metric};
use crate::quotient::EquivRelation;
use crate::{Error, Result};

/// A vector of labels in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KaryVector {
    labels: Vec<u32>,
    k: u32,
}

impl KaryVector {
    pub fn new(labels: Vec<u32>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k-ary vector", "k must be at least 1"));
        }
        if labels.is_empty() {
            return Err(Error::invalid("k-ary vector", "length must be at least 1"));
        }
        if let Some(bad) = labels.iter().find(|&&l| l == 0 || l > k) {
            return Err(Error::invalid(
                "k-ary vector",
                alloc::format!("label {bad} outside 1..={k}"),
            ));
        }
        Ok(KaryVector { labels, k })
    }

    pub fn random(n: usize, k: u32, rng: &mut dyn RngCore) -> Self {
        assert!(n >= 1 && k >= 1);
        KaryVector {
            labels: (0..n).map(|_| rng.gen_range(1..=k)).collect(),
            k,
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Applies `sigma` to every entry.
    pub fn relabel(&self, sigma: &LabelPermutation) -> Result<Self> {
        Error::check_dims("label permutation", sigma.k() as usize, self.k as usize)?;
        Ok(KaryVector {
            labels: self.labels.iter().map(|&l| sigma.apply(l)).collect(),
            k: self.k,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        Error::check_dims("k-ary vector length", self.len(), other.len())?;
        Error::check_dims("k-ary vector group count", self.k as usize, other.k as usize)
    }
}

/// A bijection on `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPermutation {
    image: Vec<u32>,
}

impl LabelPermutation {
    /// `image[l - 1]` is the new name of label `l`.
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let zero_based: Vec<usize> = image.iter().map(|&l| l.wrapping_sub(1) as usize).collect();
        if !crate::combinatorics::is_permutation(&zero_based) {
            return Err(Error::invalid("label permutation", "not a bijection on 1..=k"));
        }
        Ok(LabelPermutation { image })
    }

    pub fn identity(k: u32) -> Self {
        LabelPermutation {
            image: (1..=k).collect(),
        }
    }

    pub fn k(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn apply(&self, label: u32) -> u32 {
        self.image[(label - 1) as usize]
    }

    /// All k! permutations, lexicographic, identity first.
    pub fn all(k: u32) -> Vec<LabelPermutation> {
        permutations(k as usize)
            .into_iter()
            .map(|p| LabelPermutation {
                image: p.into_iter().map(|v| v as u32 + 1).collect(),
            })
            .collect()
    }
}

/// Labels occurring in either vector, ascending.
fn present_labels(a: &KaryVector, b: &KaryVector) -> Vec<u32> {
    let mut seen = vec![false; a.k as usize + 1];
    for &l in a.labels.iter().chain(&b.labels) {
        seen[l as usize] = true;
    }
    (1..=a.k).filter(|&l| seen[l as usize]).collect()
}

/// The renaming of `b`'s labels that maximizes agreement with `a`, together
/// with the number of agreeing positions. Labels absent from both vectors
/// map to themselves.
fn best_relabeling(a: &KaryVector, b: &KaryVector) -> (LabelPermutation, u64) {
    let used = present_labels(a, b);
    let u = used.len();
    let mut slot = vec![usize::MAX; a.k as usize + 1];
    for (i, &l) in used.iter().enumerate() {
        slot[l as usize] = i;
    }
    // agreement[row = label of b][col = label of a]
    let mut agreement = vec![0i64; u * u];
    for (&la, &lb) in a.labels.iter().zip(&b.labels) {
        agreement[slot[lb as usize] * u + slot[la as usize]] += 1;
    }
    let (assignment, matched) = max_weight_assignment(&agreement, u);
    let mut image: Vec<u32> = (1..=a.k).collect();
    for (row, &col) in assignment.iter().enumerate() {
        image[(used[row] - 1) as usize] = used[col];
    }
    (LabelPermutation { image }, matched as u64)
}

/// Hamming distance between `a` and the best relabeling of `b`.
pub fn li_distance(a: &KaryVector, b: &KaryVector) -> Result<u64> {
    a.check_compatible(b)?;
    let (_, matched) = best_relabeling(a, b);
    Ok(a.len() as u64 - matched)
}

/// Relabels `p2` to be as close as possible to `p1` under Hamming distance.
pub fn li_normalize(p1: &KaryVector, p2: &KaryVector) -> Result<KaryVector> {
    p1.check_compatible(p2)?;
    let (sigma, _) = best_relabeling(p1, p2);
    p2.relabel(&sigma)
}

/// Normalizes `p2` against `p1`, then applies the base mask crossover.
pub fn li_crossover(
    p1: &KaryVector,
    p2: &KaryVector,
    base: BaseCrossover,
    rng: &mut dyn RngCore,
) -> Result<KaryVector> {
    let p2 = li_normalize(p1, p2)?;
    genotypic_crossover(p1, &p2, base, rng)
}

/// The base crossover on raw label vectors, with no normalization.
pub fn genotypic_crossover(
    p1: &KaryVector,
    p2: &KaryVector,
    base: BaseCrossover,
    rng: &mut dyn RngCore,
) -> Result<KaryVector> {
    p1.check_compatible(p2)?;
    Ok(KaryVector {
        labels: base.apply(&p1.labels, &p2.labels, rng)?,
        k: p1.k,
    })
}

/// Hamming distance on label vectors (the genotypic distance).
#[derive(Debug, Clone, Copy, Default)]
pub struct GroupingHamming;

impl Metric<KaryVector> for GroupingHamming {
    fn distance(&self, a: &KaryVector, b: &KaryVector) -> Result<u64> {
        a.check_compatible(b)?;
        hamming(&a.labels, &b.labels)
    }
}

/// Labeling-independent distance.
#[derive(Debug, Clone, Copy, Default)]
pub struct LiDistance;

impl Metric<KaryVector> for LiDistance {
    fn distance(&self, a: &KaryVector, b: &KaryVector) -> Result<u64> {
        li_distance(a, b)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LiCrossover {
    pub base: BaseCrossover,
}

impl Crossover<KaryVector> for LiCrossover {
    fn crossover(&self, p1: &KaryVector, p2: &KaryVector, rng: &mut dyn RngCore) -> Result<KaryVector> {
        li_crossover(p1, p2, self.base, rng)
    }
}

/// Two vectors are equivalent when some label permutation maps one onto the
/// other. Classes are enumerated by applying all k! permutations in
/// lexicographic order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Relabeling;

impl EquivRelation<KaryVector> for Relabeling {
    fn same_class(&self, a: &KaryVector, b: &KaryVector) -> bool {
        a.check_compatible(b).is_ok() && li_distance(a, b) == Ok(0)
    }

    fn class_size(&self, x: &KaryVector) -> u128 {
        factorial(x.k as usize)
    }

    fn class_members(&self, x: &KaryVector) -> Vec<KaryVector> {
        LabelPermutation::all(x.k)
            .iter()
            .map(|s| x.relabel(s).expect("permutation over the same k"))
            .collect()
    }
}
