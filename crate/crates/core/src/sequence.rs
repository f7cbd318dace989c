// SPDX-License-Identifier: Apache-2.0

//! Variable-length sequences, edit distance, and homologous crossover.
//!
//! A stretched sequence is a sequence with gap symbols `-` interleaved.
//! Every stretched sequence belongs to the class of its unstretched form,
//! and the distance induced on those classes by the stretched Hamming
//! distance is the edit distance. Homologous crossover aligns the parents
//! optimally, recombines the aligned columns, and removes the gaps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, RngCore};

use crate::combinatorics::{binomial, combinations};
use crate::metric::{Crossover, Metric};
use crate::quotient::EquivRelation;
use crate::{Error, Result};

pub const GAP: u8 = b'-';

/// A gap-free sequence of byte symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seq(Vec<u8>);

impl Seq {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.contains(&GAP) {
            return Err(Error::invalid("sequence", "contains the gap symbol '-'"));
        }
        Ok(Seq(symbols))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Seq::new(s.as_bytes().to_vec())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    /// The trivial stretching.
    pub fn stretched(&self) -> StretchedSeq {
        StretchedSeq(self.0.clone())
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq({:?})", core::str::from_utf8(&self.0).unwrap_or("<bytes>"))
    }
}

/// A sequence that may contain gaps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StretchedSeq(Vec<u8>);

impl StretchedSeq {
    pub fn new(symbols: Vec<u8>) -> Self {
        StretchedSeq(symbols)
    }

    pub fn parse(s: &str) -> Self {
        StretchedSeq(s.as_bytes().to_vec())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn unstretch(&self) -> Seq {
        Seq(self.0.iter().copied().filter(|&c| c != GAP).collect())
    }
}

impl fmt::Debug for StretchedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stretched({:?})", core::str::from_utf8(&self.0).unwrap_or("<bytes>"))
    }
}

/// Two stretched sequences of equal length with no gap-gap column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub top: StretchedSeq,
    pub bottom: StretchedSeq,
}

impl Alignment {
    pub fn mismatches(&self) -> u64 {
        stretched_hamming(&self.top, &self.bottom)
    }

    pub fn is_well_formed(&self) -> bool {
        self.top.len() == self.bottom.len()
            && self
                .top
                .0
                .iter()
                .zip(&self.bottom.0)
                .all(|(&a, &b)| !(a == GAP && b == GAP))
    }
}

/// Hamming distance with the shorter operand padded by trailing gaps. A gap
/// never matches a symbol.
pub fn stretched_hamming(a: &StretchedSeq, b: &StretchedSeq) -> u64 {
    let len = a.len().max(b.len());
    (0..len)
        .filter(|&i| a.0.get(i).unwrap_or(&GAP) != b.0.get(i).unwrap_or(&GAP))
        .count() as u64
}

fn dp_table(s1: &[u8], s2: &[u8]) -> Vec<Vec<u32>> {
    let (m, n) = (s1.len(), s2.len());
    let mut d = vec![vec![0u32; n + 1]; m + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i as u32;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j as u32;
    }
    for i in 1..=m {
        for j in 1..=n {
            let sub = d[i - 1][j - 1] + (s1[i - 1] != s2[j - 1]) as u32;
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d
}

/// Unit-cost Levenshtein distance.
pub fn edit_distance(s1: &Seq, s2: &Seq) -> u64 {
    let (a, b) = (&s1.0, &s2.0);
    // Two-row variant of the full table.
    let mut prev: Vec<u32> = (0..=b.len() as u32).collect();
    let mut cur = vec![0u32; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i as u32;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + (a[i - 1] != b[j - 1]) as u32;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    u64::from(prev[b.len()])
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum AlignPolicy {
    /// Traceback prefers substitution/match, then deletion, then insertion.
    #[default]
    Deterministic,
    /// Uniform over all co-optimal alignments.
    Sampled,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Diag,
    Delete,
    Insert,
}

/// Optimal alignment of `s1` over `s2`. `rng` is only read by
/// [`AlignPolicy::Sampled`].
pub fn align(s1: &Seq, s2: &Seq, policy: AlignPolicy, rng: &mut dyn RngCore) -> Alignment {
    let (a, b) = (&s1.0, &s2.0);
    let d = dp_table(a, b);
    let (m, n) = (a.len(), b.len());
    let optimal = |i: usize, j: usize, step: Step| -> bool {
        match step {
            Step::Diag => i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (a[i - 1] != b[j - 1]) as u32,
            Step::Delete => i > 0 && d[i][j] == d[i - 1][j] + 1,
            Step::Insert => j > 0 && d[i][j] == d[i][j - 1] + 1,
        }
    };

    // Number of optimal paths from the origin to each cell.
    let counts = if policy == AlignPolicy::Sampled {
        let mut c = vec![vec![0f64; n + 1]; m + 1];
        c[0][0] = 1.0;
        for i in 0..=m {
            for j in 0..=n {
                if i == 0 && j == 0 {
                    continue;
                }
                let mut total = 0.0;
                if optimal(i, j, Step::Diag) {
                    total += c[i - 1][j - 1];
                }
                if optimal(i, j, Step::Delete) {
                    total += c[i - 1][j];
                }
                if optimal(i, j, Step::Insert) {
                    total += c[i][j - 1];
                }
                c[i][j] = total;
            }
        }
        Some(c)
    } else {
        None
    };

    let mut top = Vec::with_capacity(m + n);
    let mut bottom = Vec::with_capacity(m + n);
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        let steps = [Step::Diag, Step::Delete, Step::Insert];
        let step = match &counts {
            None => *steps.iter().find(|&&s| optimal(i, j, s)).expect("some step is optimal"),
            Some(c) => {
                let weight = |s: Step| -> f64 {
                    if !optimal(i, j, s) {
                        return 0.0;
                    }
                    match s {
                        Step::Diag => c[i - 1][j - 1],
                        Step::Delete => c[i - 1][j],
                        Step::Insert => c[i][j - 1],
                    }
                };
                let total: f64 = steps.iter().map(|&s| weight(s)).sum();
                let mut pick = rng.gen::<f64>() * total;
                let mut chosen = None;
                for &s in &steps {
                    let w = weight(s);
                    if w > 0.0 {
                        chosen = Some(s);
                        if pick < w {
                            break;
                        }
                        pick -= w;
                    }
                }
                chosen.expect("some step is optimal")
            }
        };
        match step {
            Step::Diag => {
                top.push(a[i - 1]);
                bottom.push(b[j - 1]);
                i -= 1;
                j -= 1;
            }
            Step::Delete => {
                top.push(a[i - 1]);
                bottom.push(GAP);
                i -= 1;
            }
            Step::Insert => {
                top.push(GAP);
                bottom.push(b[j - 1]);
                j -= 1;
            }
        }
    }
    top.reverse();
    bottom.reverse();
    Alignment {
        top: StretchedSeq(top),
        bottom: StretchedSeq(bottom),
    }
}

/// Aligns the parents, picks each column from a fair coin, and removes gaps.
pub fn homologous_crossover(p1: &Seq, p2: &Seq, policy: AlignPolicy, rng: &mut dyn RngCore) -> Seq {
    let al = align(p1, p2, policy, rng);
    let child: Vec<u8> = al
        .top
        .0
        .iter()
        .zip(&al.bottom.0)
        .map(|(&x, &y)| if rng.gen_bool(0.5) { x } else { y })
        .filter(|&c| c != GAP)
        .collect();
    Seq(child)
}

/// Uniform crossover on the parents aligned leftmost, with the shorter one
/// padded by gaps. Geometric under [`stretched_hamming`], not edit distance.
pub fn leftmost_crossover(p1: &Seq, p2: &Seq, rng: &mut dyn RngCore) -> Seq {
    let len = p1.len().max(p2.len());
    let child = (0..len)
        .map(|i| {
            let x = *p1.0.get(i).unwrap_or(&GAP);
            let y = *p2.0.get(i).unwrap_or(&GAP);
            if rng.gen_bool(0.5) {
                x
            } else {
                y
            }
        })
        .filter(|&c| c != GAP)
        .collect();
    Seq(child)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EditDistance;

impl Metric<Seq> for EditDistance {
    fn distance(&self, a: &Seq, b: &Seq) -> Result<u64> {
        Ok(edit_distance(a, b))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StretchedHamming;

impl Metric<StretchedSeq> for StretchedHamming {
    fn distance(&self, a: &StretchedSeq, b: &StretchedSeq) -> Result<u64> {
        Ok(stretched_hamming(a, b))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HomologousCrossover(pub AlignPolicy);

impl Crossover<Seq> for HomologousCrossover {
    fn crossover(&self, p1: &Seq, p2: &Seq, rng: &mut dyn RngCore) -> Result<Seq> {
        Ok(homologous_crossover(p1, p2, self.0, rng))
    }
}

/// Stretched sequences are equivalent when they unstretch to the same
/// sequence. Classes are infinite, so enumeration is cut at `max_len`
/// symbols: all stretchings of length `|s|..=max_len`, shorter first, gap
/// positions in lexicographic order.
#[derive(Debug, Clone, Copy)]
pub struct Stretching {
    pub max_len: usize,
}

impl EquivRelation<StretchedSeq> for Stretching {
    fn same_class(&self, a: &StretchedSeq, b: &StretchedSeq) -> bool {
        a.unstretch() == b.unstretch()
    }

    fn class_size(&self, x: &StretchedSeq) -> u128 {
        let base = x.unstretch().len();
        (base..=self.max_len.max(base)).map(|m| binomial(m, base)).sum()
    }

    fn class_members(&self, x: &StretchedSeq) -> Vec<StretchedSeq> {
        let base = x.unstretch();
        let k = base.len();
        let mut out = Vec::new();
        for m in k..=self.max_len.max(k) {
            for symbol_slots in combinations(m, k) {
                let mut s = vec![GAP; m];
                for (slot, &c) in symbol_slots.iter().zip(&base.0) {
                    s[*slot] = c;
                }
                out.push(StretchedSeq(s));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    fn seq(s: &str) -> Seq {
        Seq::parse(s).unwrap()
    }

    #[test]
    fn gap_rejected_in_plain_sequence() {
        assert!(Seq::parse("a-b").is_err());
        assert_eq!(StretchedSeq::parse("a-b").unstretch(), seq("ab"));
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance(&seq("agcacaca"), &seq("acacacta")), 2);
        assert_eq!(edit_distance(&seq("acgt"), &seq("acgt")), 0);
        assert_eq!(edit_distance(&seq(""), &seq("abc")), 3);
        assert_eq!(edit_distance(&seq("kitten"), &seq("sitting")), 3);
    }

    #[test]
    fn stretched_hamming_examples() {
        let s = StretchedSeq::parse;
        assert_eq!(stretched_hamming(&s("ab-"), &s("ab-")), 0);
        assert_eq!(stretched_hamming(&s("abc"), &s("ab")), 1);
        assert_eq!(stretched_hamming(&s("a-b"), &s("ab-")), 2);
    }

    #[test]
    fn worked_alignment_is_optimal() {
        let al = Alignment {
            top: StretchedSeq::parse("agcacac-a"),
            bottom: StretchedSeq::parse("a-cacacta"),
        };
        assert!(al.is_well_formed());
        assert_eq!(al.mismatches(), edit_distance(&seq("agcacaca"), &seq("acacacta")));
    }

    #[test]
    fn deterministic_alignment_properties() {
        let mut rng = stream_rng(0, 0);
        let al = align(&seq("agcacaca"), &seq("acacacta"), AlignPolicy::Deterministic, &mut rng);
        assert!(al.is_well_formed());
        assert_eq!(al.mismatches(), 2);
        assert_eq!(al.top.unstretch(), seq("agcacaca"));
        assert_eq!(al.bottom.unstretch(), seq("acacacta"));

        let same = align(&seq("abc"), &seq("abc"), AlignPolicy::Deterministic, &mut rng);
        assert_eq!(same.top, StretchedSeq::parse("abc"));
        assert_eq!(same.bottom, StretchedSeq::parse("abc"));

        let empty = align(&seq(""), &seq("ab"), AlignPolicy::Deterministic, &mut rng);
        assert_eq!(empty.top, StretchedSeq::parse("--"));
        assert_eq!(empty.bottom, StretchedSeq::parse("ab"));
    }

    #[test]
    fn sampled_alignment_reaches_the_gapped_example() {
        let target = StretchedSeq::parse("agcacac-a");
        let mut hit = false;
        for s in 0..400 {
            let mut rng = stream_rng(s, 0);
            let al = align(&seq("agcacaca"), &seq("acacacta"), AlignPolicy::Sampled, &mut rng);
            assert!(al.is_well_formed());
            assert_eq!(al.mismatches(), 2);
            if al.top == target && al.bottom == StretchedSeq::parse("a-cacacta") {
                hit = true;
            }
        }
        assert!(hit);
    }

    #[test]
    fn crossover_examples() {
        for s in 0..50 {
            let mut rng = stream_rng(s, 1);
            let p = seq("gattaca");
            assert_eq!(homologous_crossover(&p, &p, AlignPolicy::Deterministic, &mut rng), p);
            let c = homologous_crossover(&seq(""), &seq("ab"), AlignPolicy::Sampled, &mut rng);
            assert!([seq(""), seq("a"), seq("b"), seq("ab")].contains(&c));
        }
    }

    #[test]
    fn stretching_class_enumeration() {
        let rel = Stretching { max_len: 3 };
        let x = StretchedSeq::parse("a");
        let members = rel.class_members(&x);
        assert_eq!(members.len() as u128, rel.class_size(&x));
        assert_eq!(members[0], StretchedSeq::parse("a"));
        assert_eq!(members[1], StretchedSeq::parse("a-"));
        assert_eq!(members.len(), 1 + 2 + 3);
        assert!(rel.same_class(&StretchedSeq::parse("-a-"), &x));
    }
}
