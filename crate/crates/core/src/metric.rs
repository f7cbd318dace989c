// SPDX-License-Identifier: Apache-2.0

//! Distances, metric segments and the geometric crossover contract.
//!
//! Every distance in this crate is integer valued, so segment membership is
//! decided with exact equality: `z` is in `[x; y]` iff
//! `d(x, z) + d(z, y) == d(x, y)`.

use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::rng::stream_rng;
use crate::{Error, Result};

/// An integer-valued distance on points of type `P`.
///
/// `distance` fails when the two points do not belong to the same
/// representation space (different lengths, group counts, ...).
pub trait Metric<P: ?Sized> {
    fn distance(&self, a: &P, b: &P) -> Result<u64>;
}

impl<P: ?Sized, F> Metric<P> for F
where
    F: Fn(&P, &P) -> Result<u64>,
{
    fn distance(&self, a: &P, b: &P) -> Result<u64> {
        self(a, b)
    }
}

/// Number of positions at which two equal-length sequences differ.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hamming;

pub fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> Result<u64> {
    Error::check_dims("hamming", a.len(), b.len())?;
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u64)
}

impl<T: PartialEq> Metric<[T]> for Hamming {
    fn distance(&self, a: &[T], b: &[T]) -> Result<u64> {
        hamming(a, b)
    }
}

impl<T: PartialEq> Metric<Vec<T>> for Hamming {
    fn distance(&self, a: &Vec<T>, b: &Vec<T>) -> Result<u64> {
        hamming(a, b)
    }
}

/// Whether `z` lies in the metric segment between `x` and `y`.
pub fn segment_contains<P: ?Sized, M: Metric<P> + ?Sized>(x: &P, y: &P, z: &P, d: &M) -> Result<bool> {
    let xy = d.distance(x, y)?;
    let xz = d.distance(x, z)?;
    let zy = d.distance(z, y)?;
    Ok(xz + zy == xy)
}

/// A recombination operator. Implementations must draw all randomness from
/// `rng`.
pub trait Crossover<P> {
    fn crossover(&self, p1: &P, p2: &P, rng: &mut dyn RngCore) -> Result<P>;
}

impl<P, F> Crossover<P> for F
where
    F: Fn(&P, &P, &mut dyn RngCore) -> Result<P>,
{
    fn crossover(&self, p1: &P, p2: &P, rng: &mut dyn RngCore) -> Result<P> {
        self(p1, p2, rng)
    }
}

/// Spaces up to this many points are checked exhaustively by
/// [`CheckMode::auto`].
pub const EXHAUSTIVE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every pair and every ordered triple.
    Exhaustive,
    /// Every pair, plus `triples` random triples drawn from stream 0 of `seed`.
    Sampled { triples: u64, seed: u64 },
}

impl CheckMode {
    pub fn auto(points: usize, triples: u64, seed: u64) -> Self {
        if points <= EXHAUSTIVE_LIMIT {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled { triples, seed }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomCheck {
    pub mode: CheckMode,
    /// Only require `d(x, x) = 0`; distinct points may be at distance zero.
    pub pseudo: bool,
}

impl Default for AxiomCheck {
    fn default() -> Self {
        AxiomCheck {
            mode: CheckMode::Exhaustive,
            pseudo: false,
        }
    }
}

/// Findings of [`check_metric_axioms`]. Indices refer to the input sample.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub points: usize,
    pub triples_checked: u64,
    /// Pairs `(i, j)` where `d = 0` disagrees with `points[i] == points[j]`.
    pub identity: Vec<(usize, usize)>,
    /// Pairs `(i, j)`, `i < j`, with `d(i, j) != d(j, i)`.
    pub symmetry: Vec<(usize, usize)>,
    /// Triples `(i, j, k)` with `d(i, k) > d(i, j) + d(j, k)`.
    pub triangle: Vec<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.identity.is_empty() && self.symmetry.is_empty() && self.triangle.is_empty()
    }

    pub fn violations(&self) -> usize {
        self.identity.len() + self.symmetry.len() + self.triangle.len()
    }
}

/// Checks identity, symmetry and the triangle inequality on a sample.
///
/// Pairs are always checked exhaustively; triples follow `check.mode`.
/// Distance errors propagate.
pub fn check_metric_axioms<P: PartialEq, M: Metric<P> + ?Sized>(
    points: &[P],
    d: &M,
    check: AxiomCheck,
) -> Result<AxiomReport> {
    let n = points.len();
    if n == 0 {
        return Err(Error::invalid("axiom sample", "empty"));
    }
    let mut dist = Vec::with_capacity(n * n);
    for a in points {
        for b in points {
            dist.push(d.distance(a, b)?);
        }
    }
    let at = |i: usize, j: usize| dist[i * n + j];

    let mut report = AxiomReport {
        points: n,
        ..AxiomReport::default()
    };
    for i in 0..n {
        for j in 0..n {
            let zero = at(i, j) == 0;
            let ok = if i == j {
                zero
            } else if check.pseudo {
                true
            } else {
                zero == (points[i] == points[j])
            };
            if !ok {
                report.identity.push((i, j));
            }
            if i < j && at(i, j) != at(j, i) {
                report.symmetry.push((i, j));
            }
        }
    }

    let visit = |i: usize, j: usize, k: usize, report: &mut AxiomReport| {
        report.triples_checked += 1;
        if at(i, k) > at(i, j) + at(j, k) {
            report.triangle.push((i, j, k));
        }
    };
    match check.mode {
        CheckMode::Exhaustive => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        visit(i, j, k, &mut report);
                    }
                }
            }
        }
        CheckMode::Sampled { triples, seed } => {
            let mut rng = stream_rng(seed, 0);
            for _ in 0..triples {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                visit(i, j, k, &mut report);
            }
        }
    }
    Ok(report)
}

/// One offspring that fell outside the segment of its parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pair: usize,
    pub trial: u32,
    pub d_parents: u64,
    pub d_first: u64,
    pub d_second: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeometricityReport {
    pub total: u64,
    pub violations: Vec<Violation>,
}

impl GeometricityReport {
    pub fn violation_rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.violations.len() as f64 / self.total as f64
        }
    }
}

/// Runs `op` `trials_per_pair` times on every parent pair and records each
/// offspring that is not in the segment `[p1; p2]` under `d`.
///
/// Trial `t` of pair `i` uses stream `i * trials_per_pair + t` of `seed`.
pub fn check_geometricity<P, C, M>(
    op: &C,
    d: &M,
    pairs: &[(P, P)],
    trials_per_pair: u32,
    seed: u64,
) -> Result<GeometricityReport>
where
    C: Crossover<P> + ?Sized,
    M: Metric<P> + ?Sized,
{
    if trials_per_pair == 0 {
        return Err(Error::invalid("trials_per_pair", "must be at least 1"));
    }
    let mut report = GeometricityReport::default();
    for (pi, (p1, p2)) in pairs.iter().enumerate() {
        let d_parents = d.distance(p1, p2)?;
        for t in 0..trials_per_pair {
            let mut rng = stream_rng(seed, pi as u64 * u64::from(trials_per_pair) + u64::from(t));
            let child = op.crossover(p1, p2, &mut rng)?;
            let d_first = d.distance(p1, &child)?;
            let d_second = d.distance(&child, p2)?;
            report.total += 1;
            if d_first + d_second != d_parents {
                report.violations.push(Violation {
                    pair: pi,
                    trial: t,
                    d_parents,
                    d_first,
                    d_second,
                });
            }
        }
    }
    Ok(report)
}
