// SPDX-License-Identifier: Apache-2.0

//! Permutations, reversal distance, and tours as permutations up to
//! rotation.
//!
//! A reversal flips a contiguous block of positions. Sorting unsigned
//! permutations by reversals is NP-hard, so exact distances come from
//! breadth-first search over all `n!` permutations and are limited to small
//! `n`; larger instances use breakpoint bounds and a greedy sorting path.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::combinatorics::{factorial, invert, is_permutation, perm_rank, perm_unrank};
use crate::metric::{Crossover, Metric};
use crate::quotient::EquivRelation;
use crate::{Error, Result};

pub const DEFAULT_EXACT_BOUND: usize = 8;
const UNSEEN: u8 = u8::MAX;

/// A permutation of `0..n`, read as a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        if !is_permutation(&order) {
            return Err(Error::invalid("permutation", "not a bijection on 0..n"));
        }
        Ok(Perm(order))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn random(n: usize, rng: &mut dyn RngCore) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Perm(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        is_permutation(&self.0)
    }

    /// Left rotation by `k`: element at position `k` moves to the front.
    pub fn rotated(&self, k: usize) -> Perm {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        Perm((0..n).map(|i| self.0[(i + k) % n]).collect())
    }

    pub fn reflected(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    /// Flips positions `i..=j`.
    pub fn reversed(&self, i: usize, j: usize) -> Perm {
        let mut v = self.0.clone();
        v[i..=j].reverse();
        Perm(v)
    }

    /// Canonical representative of the tour: the rotation starting at 0.
    pub fn canonical_tour(&self) -> Perm {
        match self.0.iter().position(|&v| v == 0) {
            Some(k) => self.rotated(k),
            None => self.clone(),
        }
    }

    fn rank(&self) -> usize {
        perm_rank(&self.0)
    }
}

fn check_sizes(a: &Perm, b: &Perm) -> Result<()> {
    Error::check_dims("permutation size", a.len(), b.len())
}

/// `w` with `from = target ∘ w`: position in `target` of each element of
/// `from`. Reversing positions of `from` reverses the same positions of `w`,
/// and `from` equals `target` iff `w` is the identity.
fn relative(from: &[usize], target: &[usize]) -> Vec<usize> {
    let pos = invert(target);
    from.iter().map(|&v| pos[v]).collect()
}

/// Breakpoints of `a` relative to `b`: adjacent pairs of `a`, including the
/// two frame positions before the first and after the last element, that are
/// not adjacent in `b`.
pub fn breakpoints(a: &Perm, b: &Perm) -> Result<u64> {
    check_sizes(a, b)?;
    Ok(framed_breakpoints(&framed(&relative(&a.0, &b.0))))
}

fn framed(w: &[usize]) -> Vec<usize> {
    let mut f = Vec::with_capacity(w.len() + 2);
    f.push(0);
    f.extend(w.iter().map(|&x| x + 1));
    f.push(w.len() + 1);
    f
}

fn is_break(x: usize, y: usize) -> bool {
    x.abs_diff(y) != 1
}

fn framed_breakpoints(f: &[usize]) -> u64 {
    f.windows(2).filter(|p| is_break(p[0], p[1])).count() as u64
}

/// Breakpoint change from reversing `f[i+1..=j+1]` (positions `i..=j` of
/// the unframed sequence).
fn reversal_gain(f: &[usize], i: usize, j: usize) -> i64 {
    let before = is_break(f[i], f[i + 1]) as i64 + is_break(f[j + 1], f[j + 2]) as i64;
    let after = is_break(f[i], f[j + 1]) as i64 + is_break(f[i + 1], f[j + 2]) as i64;
    before - after
}

/// BFS distances to one permutation from every permutation of the same
/// size, indexed by Lehmer rank. Reversals are involutions, so the reversal
/// graph is undirected.
#[derive(Debug, Clone)]
pub struct ReversalTable {
    n: usize,
    dist: Vec<u8>,
}

impl ReversalTable {
    pub fn new(target: &Perm, bound: usize) -> Result<Self> {
        let n = target.len();
        check_exact_bound(n, bound)?;
        let mut dist = vec![UNSEEN; factorial(n) as usize];
        let mut queue = VecDeque::new();
        dist[target.rank()] = 0;
        queue.push_back(target.clone());
        while let Some(p) = queue.pop_front() {
            let d = dist[p.rank()];
            for i in 0..n {
                for j in i + 1..n {
                    let q = p.reversed(i, j);
                    let r = q.rank();
                    if dist[r] == UNSEEN {
                        dist[r] = d + 1;
                        queue.push_back(q);
                    }
                }
            }
        }
        Ok(ReversalTable { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, p: &Perm) -> Result<u64> {
        Error::check_dims("permutation size", p.len(), self.n)?;
        Ok(u64::from(self.dist[p.rank()]))
    }

    /// Largest distance in the table (the diameter when rooted anywhere).
    pub fn max_distance(&self) -> u64 {
        u64::from(*self.dist.iter().max().unwrap_or(&0))
    }
}

fn check_exact_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        Err(Error::Capacity {
            what: "exact reversal distance size",
            size: n as u128,
            bound: bound as u128,
        })
    } else {
        Ok(())
    }
}

/// Exact reversal distance by bidirectional breadth-first search.
pub fn reversal_distance_exact(a: &Perm, b: &Perm, bound: usize) -> Result<u64> {
    check_sizes(a, b)?;
    let n = a.len();
    check_exact_bound(n, bound)?;
    if a == b {
        return Ok(0);
    }
    let states = factorial(n) as usize;
    let mut dist = [vec![UNSEEN; states], vec![UNSEEN; states]];
    let mut frontier = [vec![a.clone()], vec![b.clone()]];
    dist[0][a.rank()] = 0;
    dist[1][b.rank()] = 0;
    let mut level = [0u8; 2];
    loop {
        // Expand the smaller frontier one full layer. Before the layer the
        // two visited sets are disjoint, so the first meeting is optimal.
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        let mut next = Vec::new();
        for p in &frontier[side] {
            for i in 0..n {
                for j in i + 1..n {
                    let q = p.reversed(i, j);
                    let r = q.rank();
                    if dist[side][r] != UNSEEN {
                        continue;
                    }
                    dist[side][r] = level[side] + 1;
                    if dist[other][r] != UNSEEN {
                        return Ok(u64::from(level[side]) + 1 + u64::from(dist[other][r]));
                    }
                    next.push(q);
                }
            }
        }
        level[side] += 1;
        frontier[side] = next;
    }
}

/// Lower and upper bounds on the reversal distance. Exact when equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceInterval {
    pub lower: u64,
    pub upper: u64,
}

impl DistanceInterval {
    pub fn exact(d: u64) -> Self {
        DistanceInterval { lower: d, upper: d }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReversalMode {
    Exact {
        bound: usize,
    },
    /// Breakpoint lower bound and greedy sorting upper bound.
    BreakpointBound,
}

impl ReversalMode {
    pub const EXACT: ReversalMode = ReversalMode::Exact {
        bound: DEFAULT_EXACT_BOUND,
    };
}

pub fn reversal_distance(a: &Perm, b: &Perm, mode: ReversalMode) -> Result<DistanceInterval> {
    match mode {
        ReversalMode::Exact { bound } => reversal_distance_exact(a, b, bound).map(DistanceInterval::exact),
        ReversalMode::BreakpointBound => reversal_distance_bounds(a, b),
    }
}

/// `ceil(b / 2)` (a reversal removes at most two breakpoints) and the length
/// of the deterministic greedy sorting path.
pub fn reversal_distance_bounds(a: &Perm, b: &Perm) -> Result<DistanceInterval> {
    let bp = breakpoints(a, b)?;
    let upper = greedy_sort_path(a, b, None)?.len() as u64 - 1;
    Ok(DistanceInterval {
        lower: bp.div_ceil(2),
        upper,
    })
}

/// Greedy sorting of `from` into `target` by breakpoint-removing reversals.
///
/// Each step takes a reversal removing the most breakpoints. When none
/// removes any, every strip is increasing and the first interior increasing
/// strip is reversed, which guarantees the next step removes at least one.
/// With `rng`, ties are broken uniformly; without, the lowest `(i, j)` wins.
/// Returns every visited permutation, `from` first and `target` last.
pub fn greedy_sort_path(from: &Perm, target: &Perm, mut rng: Option<&mut dyn RngCore>) -> Result<Vec<Perm>> {
    check_sizes(from, target)?;
    let n = from.len();
    let mut cur = from.clone();
    let mut f = framed(&relative(&from.0, &target.0));
    let mut path = vec![cur.clone()];
    while framed_breakpoints(&f) > 0 {
        let mut best_gain = i64::MIN;
        let mut best: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let g = reversal_gain(&f, i, j);
                if g > best_gain {
                    best_gain = g;
                    best.clear();
                }
                if g == best_gain {
                    best.push((i, j));
                }
            }
        }
        let (i, j) = if best_gain > 0 {
            match rng.as_deref_mut() {
                Some(r) => *best.choose(r).expect("non-empty"),
                None => best[0],
            }
        } else {
            first_interior_increasing_strip(&f).unwrap_or(best[0])
        };
        f[i + 1..=j + 1].reverse();
        cur = cur.reversed(i, j);
        path.push(cur.clone());
    }
    debug_assert_eq!(&cur, target);
    Ok(path)
}

/// Unframed `(start, end)` of the first strip of length >= 2 that excludes
/// both frame elements.
fn first_interior_increasing_strip(f: &[usize]) -> Option<(usize, usize)> {
    let last = f.len() - 1;
    let mut start = 0;
    for t in 1..=f.len() {
        if t == f.len() || is_break(f[t - 1], f[t]) {
            let end = t - 1;
            if start > 0 && end < last && end > start && f[start] < f[end] {
                return Some((start - 1, end - 1));
            }
            start = t;
        }
    }
    None
}

/// Tour-equivalence options. Reflection (reading the tour backwards) is an
/// extra quotient on top of rotation and is off by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TourEquivalence {
    pub reflection: bool,
}

/// Class members: rotations by `0..n`, then (with reflection) rotations of
/// the reflected sequence.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rotation(pub TourEquivalence);

impl Rotation {
    fn members(&self, x: &Perm) -> Vec<Perm> {
        let n = x.len().max(1);
        let mut out: Vec<Perm> = (0..n).map(|k| x.rotated(k)).collect();
        if self.0.reflection {
            let r = x.reflected();
            out.extend((0..n).map(|k| r.rotated(k)));
        }
        out
    }
}

impl EquivRelation<Perm> for Rotation {
    fn same_class(&self, a: &Perm, b: &Perm) -> bool {
        a.len() == b.len() && self.members(b).contains(a)
    }

    fn class_size(&self, x: &Perm) -> u128 {
        let n = x.len().max(1) as u128;
        if self.0.reflection {
            2 * n
        } else {
            n
        }
    }

    fn class_members(&self, x: &Perm) -> Vec<Perm> {
        self.members(x)
    }
}

/// The member of `p2`'s tour class with the fewest breakpoints against
/// `p1`; ties go to smaller Hamming distance, then to the earlier member.
pub fn circ_normalize(p1: &Perm, p2: &Perm, eq: TourEquivalence) -> Result<Perm> {
    check_sizes(p1, p2)?;
    let mut best: Option<((u64, u64), Perm)> = None;
    for cand in Rotation(eq).members(p2) {
        let key = (breakpoints(&cand, p1)?, crate::metric::hamming(&cand.0, &p1.0)?);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, cand));
        }
    }
    Ok(best.expect("at least one rotation").1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryMode {
    /// Steps chosen uniformly among reversals that lower the exact distance
    /// to the target by one.
    Exact { bound: usize },
    /// Steps from the randomized greedy breakpoint sort.
    Greedy,
}

impl TrajectoryMode {
    pub const EXACT: TrajectoryMode = TrajectoryMode::Exact {
        bound: DEFAULT_EXACT_BOUND,
    };

    /// Exact when `n` is within the default bound, greedy above.
    pub fn auto(n: usize) -> Self {
        if n <= DEFAULT_EXACT_BOUND {
            TrajectoryMode::EXACT
        } else {
            TrajectoryMode::Greedy
        }
    }
}

/// A point on a sorting trajectory from `p1` to `target`, after a number of
/// steps drawn uniformly from `0..=length`. No normalization.
pub fn sorting_crossover(p1: &Perm, target: &Perm, mode: TrajectoryMode, rng: &mut dyn RngCore) -> Result<Perm> {
    check_sizes(p1, target)?;
    match mode {
        TrajectoryMode::Exact { bound } => {
            let table = ReversalTable::new(target, bound)?;
            let total = table.distance(p1)?;
            let steps = rng.gen_range(0..=total);
            let n = p1.len();
            let mut cur = p1.clone();
            let mut d = total;
            let mut moves = Vec::new();
            for _ in 0..steps {
                moves.clear();
                for i in 0..n {
                    for j in i + 1..n {
                        if table.distance(&cur.reversed(i, j))? + 1 == d {
                            moves.push((i, j));
                        }
                    }
                }
                let &(i, j) = moves.choose(rng).expect("a distance-reducing reversal exists");
                cur = cur.reversed(i, j);
                d -= 1;
            }
            Ok(cur)
        }
        TrajectoryMode::Greedy => {
            let path = greedy_sort_path(p1, target, Some(&mut *rng))?;
            let k = rng.gen_range(0..path.len());
            Ok(path[k].clone())
        }
    }
}

/// Rotates `p2` to match `p1`, then samples a point on a sorting trajectory
/// between them.
pub fn reversal_crossover(
    p1: &Perm,
    p2: &Perm,
    mode: TrajectoryMode,
    eq: TourEquivalence,
    rng: &mut dyn RngCore,
) -> Result<Perm> {
    let target = circ_normalize(p1, p2, eq)?;
    sorting_crossover(p1, &target, mode, rng)
}

#[derive(Debug, Clone, Copy)]
pub struct ReversalCrossover {
    pub mode: TrajectoryMode,
    pub eq: TourEquivalence,
}

impl Crossover<Perm> for ReversalCrossover {
    fn crossover(&self, p1: &Perm, p2: &Perm, rng: &mut dyn RngCore) -> Result<Perm> {
        reversal_crossover(p1, p2, self.mode, self.eq, rng)
    }
}

/// Exact reversal distance on linear permutations.
#[derive(Debug, Clone, Copy)]
pub struct ReversalDistance {
    pub bound: usize,
}

impl Default for ReversalDistance {
    fn default() -> Self {
        ReversalDistance {
            bound: DEFAULT_EXACT_BOUND,
        }
    }
}

impl Metric<Perm> for ReversalDistance {
    fn distance(&self, a: &Perm, b: &Perm) -> Result<u64> {
        reversal_distance_exact(a, b, self.bound)
    }
}

/// Reversal distance between tours: the minimum over rotations of both
/// arguments of the linear reversal distance.
///
/// Rotating both sequences by the same amount can change their reversal
/// distance, so fixing the first argument and rotating only the second is
/// not enough. Distances come from one BFS table rooted at the identity,
/// using `rd(a, b) = rd(id, w)` where `b[i] = a[w[i]]`.
#[derive(Debug, Clone)]
pub struct TourReversalDistance {
    table: ReversalTable,
    eq: TourEquivalence,
}

impl TourReversalDistance {
    pub fn new(n: usize, eq: TourEquivalence, bound: usize) -> Result<Self> {
        Ok(TourReversalDistance {
            table: ReversalTable::new(&Perm::identity(n), bound)?,
            eq,
        })
    }

    /// Linear reversal distance through the identity-rooted table.
    pub fn linear(&self, a: &Perm, b: &Perm) -> Result<u64> {
        check_sizes(a, b)?;
        let w = relative(&b.0, &a.0);
        self.table.distance(&Perm(w))
    }
}

impl Metric<Perm> for TourReversalDistance {
    fn distance(&self, a: &Perm, b: &Perm) -> Result<u64> {
        check_sizes(a, b)?;
        let rot = Rotation(self.eq);
        let mut best = u64::MAX;
        for x in rot.members(a) {
            for y in rot.members(b) {
                best = best.min(self.linear(&x, &y)?);
            }
        }
        Ok(best)
    }
}

/// Enumerates all permutations of `0..n` whose first element is 0 (one per
/// tour class under rotation).
pub fn canonical_tours(n: usize) -> Vec<Perm> {
    if n == 0 {
        return vec![Perm(Vec::new())];
    }
    (0..factorial(n - 1) as usize)
        .map(|r| {
            let rest = perm_unrank(n - 1, r);
            let mut v = vec![0];
            v.extend(rest.into_iter().map(|x| x + 1));
            Perm(v)
        })
        .collect()
}
