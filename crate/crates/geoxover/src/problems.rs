// SPDX-License-Identifier: Apache-2.0

//! Benchmark problems. Each one fixes a representation, a fitness function,
//! and the crossover, mutation and diversity distances the engine uses.

use geoxover_core::crossover::{uniform, BaseCrossover};
use geoxover_core::fsm::{all_strings, fsm_crossover, table_crossover, table_hamming, FsmTable};
use geoxover_core::graph::{self, cell_hamming, graph_li_crossover, graph_li_distance, AdjMatrix, GraphLiMode};
use geoxover_core::grouping::{self, li_crossover, li_distance, KaryVector};
use geoxover_core::metric::hamming;
use geoxover_core::sequence::{
    edit_distance, homologous_crossover, leftmost_crossover, stretched_hamming, AlignPolicy, Seq,
};
use geoxover_core::tour::{
    reversal_crossover, sorting_crossover, Perm, TourEquivalence, TourReversalDistance, TrajectoryMode,
};
use rand::{Rng, RngCore};

use crate::config::{CrossoverKind, FsmTask};
use crate::error::{HarnessError, Result};
use crate::formats::Coordinates;

/// Largest graph for which the quotient diversity column is computed.
pub const GRAPH_QUOTIENT_DIVERSITY_MAX: usize = 7;
/// Largest tour for which the quotient diversity column is computed.
pub const TOUR_QUOTIENT_DIVERSITY_MAX: usize = 8;
/// Balance penalty weight for graph partitioning.
pub const DEFAULT_LAMBDA: f64 = 2.0;
/// Longest input string scored by the FSM tasks.
pub const FSM_MAX_INPUT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// True when `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }
}

/// What the engine needs from a problem. All methods are pure apart from the
/// supplied RNG, so offspring can be produced concurrently.
pub trait Problem: Sync {
    type Genotype: Clone + Send + Sync;

    fn direction(&self) -> Direction;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Genotype;
    fn fitness(&self, g: &Self::Genotype) -> f64;
    fn crossover(&self, p1: &Self::Genotype, p2: &Self::Genotype, rng: &mut dyn RngCore) -> Result<Self::Genotype>;
    fn mutate(&self, g: &Self::Genotype, rate: f64, rng: &mut dyn RngCore) -> Self::Genotype;
    fn genotypic_distance(&self, a: &Self::Genotype, b: &Self::Genotype) -> Result<u64>;
    /// `None` when no tractable quotient distance exists for this instance.
    fn quotient_distance(&self, a: &Self::Genotype, b: &Self::Genotype) -> Option<Result<u64>>;
    fn is_valid(&self, g: &Self::Genotype) -> bool;
}

fn flip(rng: &mut dyn RngCore, rate: f64) -> bool {
    rate > 0.0 && rng.gen_bool(rate)
}

// ---------------------------------------------------------------------------

/// Count of ones in a bit string, maximized.
#[derive(Debug, Clone)]
pub struct OneMax {
    pub n: usize,
}

impl Problem for OneMax {
    type Genotype = Vec<u8>;

    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    fn random(&self, rng: &mut dyn RngCore) -> Vec<u8> {
        (0..self.n).map(|_| rng.gen_range(0..2u8)).collect()
    }

    fn fitness(&self, g: &Vec<u8>) -> f64 {
        g.iter().map(|&b| f64::from(b)).sum()
    }

    fn crossover(&self, p1: &Vec<u8>, p2: &Vec<u8>, rng: &mut dyn RngCore) -> Result<Vec<u8>> {
        Ok(uniform(p1, p2, rng)?)
    }

    fn mutate(&self, g: &Vec<u8>, rate: f64, rng: &mut dyn RngCore) -> Vec<u8> {
        g.iter().map(|&b| if flip(rng, rate) { 1 - b } else { b }).collect()
    }

    fn genotypic_distance(&self, a: &Vec<u8>, b: &Vec<u8>) -> Result<u64> {
        Ok(hamming(a, b)?)
    }

    fn quotient_distance(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Result<u64>> {
        Some(self.genotypic_distance(a, b))
    }

    fn is_valid(&self, g: &Vec<u8>) -> bool {
        g.len() == self.n && g.iter().all(|&b| b <= 1)
    }
}

// ---------------------------------------------------------------------------

/// k-way graph partitioning: cut edges plus a squared overload penalty,
/// minimized.
#[derive(Debug, Clone)]
pub struct Partition {
    pub graph: AdjMatrix,
    pub k: u32,
    pub lambda: f64,
    pub crossover: CrossoverKind,
}

impl Partition {
    pub fn new(graph: AdjMatrix, k: u32, crossover: CrossoverKind) -> Self {
        Partition {
            graph,
            k,
            lambda: DEFAULT_LAMBDA,
            crossover,
        }
    }

    /// `cut + lambda * sum_g max(0, |g| - ceil(n / k))^2`.
    pub fn score(&self, g: &KaryVector) -> Result<f64> {
        let n = self.graph.n();
        if g.len() != n {
            return Err(HarnessError::Core(geoxover_core::Error::DimensionMismatch {
                what: "partition genotype",
                left: g.len(),
                right: n,
            }));
        }
        let labels = g.labels();
        let cut = self
            .graph
            .edges()
            .into_iter()
            .filter(|&(u, v)| labels[u] != labels[v])
            .count();
        let cap = n.div_ceil(self.k as usize);
        let mut sizes = vec![0usize; self.k as usize + 1];
        for &l in labels {
            sizes[l as usize] += 1;
        }
        let overload: f64 = sizes.iter().map(|&s| (s.saturating_sub(cap) as f64).powi(2)).sum();
        Ok(cut as f64 + self.lambda * overload)
    }
}

impl Problem for Partition {
    type Genotype = KaryVector;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn random(&self, rng: &mut dyn RngCore) -> KaryVector {
        KaryVector::random(self.graph.n(), self.k, rng)
    }

    fn fitness(&self, g: &KaryVector) -> f64 {
        self.score(g).expect("genotype sized to the instance")
    }

    fn crossover(&self, p1: &KaryVector, p2: &KaryVector, rng: &mut dyn RngCore) -> Result<KaryVector> {
        Ok(match self.crossover {
            CrossoverKind::Genotypic => grouping::genotypic_crossover(p1, p2, BaseCrossover::Uniform, rng)?,
            CrossoverKind::Quotient | CrossoverKind::QuotientHeuristic => {
                li_crossover(p1, p2, BaseCrossover::Uniform, rng)?
            }
        })
    }

    fn mutate(&self, g: &KaryVector, rate: f64, rng: &mut dyn RngCore) -> KaryVector {
        let labels = g
            .labels()
            .iter()
            .map(|&l| if flip(rng, rate) { rng.gen_range(1..=self.k) } else { l })
            .collect();
        KaryVector::new(labels, self.k).expect("labels drawn from 1..=k")
    }

    fn genotypic_distance(&self, a: &KaryVector, b: &KaryVector) -> Result<u64> {
        Ok(hamming(a.labels(), b.labels())?)
    }

    fn quotient_distance(&self, a: &KaryVector, b: &KaryVector) -> Option<Result<u64>> {
        Some(li_distance(a, b).map_err(Into::into))
    }

    fn is_valid(&self, g: &KaryVector) -> bool {
        g.len() == self.graph.n() && g.k() == self.k && g.labels().iter().all(|&l| (1..=self.k).contains(&l))
    }
}

// ---------------------------------------------------------------------------

/// Closed-tour length with rounded Euclidean edges, minimized.
#[derive(Debug, Clone)]
pub struct Tsp {
    pub cities: Coordinates,
    pub crossover: CrossoverKind,
    quotient: Option<TourReversalDistance>,
}

impl Tsp {
    pub fn new(cities: Coordinates, crossover: CrossoverKind) -> Result<Self> {
        if cities.len() < 2 {
            return Err(HarnessError::config("instance", "a tour needs at least two cities"));
        }
        let n = cities.len();
        let quotient = if n <= TOUR_QUOTIENT_DIVERSITY_MAX {
            Some(TourReversalDistance::new(
                n,
                TourEquivalence::default(),
                TOUR_QUOTIENT_DIVERSITY_MAX,
            )?)
        } else {
            None
        };
        Ok(Tsp {
            cities,
            crossover,
            quotient,
        })
    }

    pub fn tour_length(&self, tour: &Perm) -> u64 {
        let t = tour.as_slice();
        (0..t.len())
            .map(|i| self.cities.rounded_distance(t[i], t[(i + 1) % t.len()]))
            .sum()
    }
}

impl Problem for Tsp {
    type Genotype = Perm;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn random(&self, rng: &mut dyn RngCore) -> Perm {
        Perm::random(self.cities.len(), rng)
    }

    fn fitness(&self, g: &Perm) -> f64 {
        self.tour_length(g) as f64
    }

    fn crossover(&self, p1: &Perm, p2: &Perm, rng: &mut dyn RngCore) -> Result<Perm> {
        let auto = TrajectoryMode::auto(p1.len());
        let eq = TourEquivalence::default();
        Ok(match self.crossover {
            CrossoverKind::Genotypic => sorting_crossover(p1, p2, auto, rng)?,
            CrossoverKind::Quotient => reversal_crossover(p1, p2, auto, eq, rng)?,
            CrossoverKind::QuotientHeuristic => reversal_crossover(p1, p2, TrajectoryMode::Greedy, eq, rng)?,
        })
    }

    /// With probability `rate`, reverses one uniformly chosen segment.
    fn mutate(&self, g: &Perm, rate: f64, rng: &mut dyn RngCore) -> Perm {
        if g.len() < 2 || !flip(rng, rate) {
            return g.clone();
        }
        let i = rng.gen_range(0..g.len() - 1);
        let j = rng.gen_range(i + 1..g.len());
        g.reversed(i, j)
    }

    fn genotypic_distance(&self, a: &Perm, b: &Perm) -> Result<u64> {
        Ok(hamming(a.as_slice(), b.as_slice())?)
    }

    fn quotient_distance(&self, a: &Perm, b: &Perm) -> Option<Result<u64>> {
        use geoxover_core::Metric;
        self.quotient.as_ref().map(|q| q.distance(a, b).map_err(Into::into))
    }

    fn is_valid(&self, g: &Perm) -> bool {
        g.len() == self.cities.len() && g.is_valid()
    }
}

// ---------------------------------------------------------------------------

/// Sum of edit distances to every corpus sequence, minimized.
#[derive(Debug, Clone)]
pub struct SeqMatch {
    pub corpus: Vec<Seq>,
    pub crossover: CrossoverKind,
    alphabet: Vec<u8>,
    min_len: usize,
    max_len: usize,
}

impl SeqMatch {
    pub fn new(corpus: Vec<Seq>, crossover: CrossoverKind) -> Result<Self> {
        let mut alphabet: Vec<u8> = corpus.iter().flat_map(|s| s.symbols().iter().copied()).collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.is_empty() {
            return Err(HarnessError::config("instance", "corpus has no symbols"));
        }
        let min_len = corpus.iter().map(Seq::len).min().unwrap_or(0);
        let max_len = corpus.iter().map(Seq::len).max().unwrap_or(0);
        Ok(SeqMatch {
            corpus,
            crossover,
            alphabet,
            min_len,
            max_len,
        })
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    fn symbol(&self, rng: &mut dyn RngCore) -> u8 {
        self.alphabet[rng.gen_range(0..self.alphabet.len())]
    }
}

impl Problem for SeqMatch {
    type Genotype = Seq;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn random(&self, rng: &mut dyn RngCore) -> Seq {
        let len = rng.gen_range(self.min_len..=self.max_len);
        Seq::new((0..len).map(|_| self.symbol(rng)).collect()).expect("alphabet has no gap")
    }

    fn fitness(&self, g: &Seq) -> f64 {
        self.corpus.iter().map(|s| edit_distance(g, s)).sum::<u64>() as f64
    }

    fn crossover(&self, p1: &Seq, p2: &Seq, rng: &mut dyn RngCore) -> Result<Seq> {
        Ok(match self.crossover {
            CrossoverKind::Genotypic => leftmost_crossover(p1, p2, rng),
            CrossoverKind::Quotient => homologous_crossover(p1, p2, AlignPolicy::Deterministic, rng),
            CrossoverKind::QuotientHeuristic => homologous_crossover(p1, p2, AlignPolicy::Sampled, rng),
        })
    }

    /// Each locus is, with probability `rate`, replaced, deleted, or followed
    /// by an inserted symbol (one of the three uniformly). The empty sequence
    /// can only grow.
    fn mutate(&self, g: &Seq, rate: f64, rng: &mut dyn RngCore) -> Seq {
        let mut out = Vec::with_capacity(g.len() + 1);
        if g.is_empty() {
            if flip(rng, rate) {
                out.push(self.symbol(rng));
            }
        } else {
            for &c in g.symbols() {
                if !flip(rng, rate) {
                    out.push(c);
                    continue;
                }
                match rng.gen_range(0..3u8) {
                    0 => out.push(self.symbol(rng)),
                    1 => {}
                    _ => {
                        out.push(c);
                        out.push(self.symbol(rng));
                    }
                }
            }
        }
        Seq::new(out).expect("alphabet has no gap")
    }

    fn genotypic_distance(&self, a: &Seq, b: &Seq) -> Result<u64> {
        Ok(stretched_hamming(&a.stretched(), &b.stretched()))
    }

    fn quotient_distance(&self, a: &Seq, b: &Seq) -> Option<Result<u64>> {
        Some(Ok(edit_distance(a, b)))
    }

    fn is_valid(&self, g: &Seq) -> bool {
        g.symbols().iter().all(|c| self.alphabet.binary_search(c).is_ok())
    }
}

// ---------------------------------------------------------------------------

/// Match a target graph's sorted degree sequence and triangle count,
/// minimized.
#[derive(Debug, Clone)]
pub struct DegreeSequence {
    pub target: AdjMatrix,
    pub crossover: CrossoverKind,
    target_degrees: Vec<usize>,
    target_triangles: usize,
    density: f64,
}

pub fn sorted_degrees(g: &AdjMatrix) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|i| g.degree(i)).collect();
    d.sort_unstable();
    d
}

pub fn triangle_count(g: &AdjMatrix) -> usize {
    let n = g.n();
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                continue;
            }
            t += (j + 1..n).filter(|&k| g.has_edge(i, k) && g.has_edge(j, k)).count();
        }
    }
    t
}

impl DegreeSequence {
    pub fn new(target: AdjMatrix, crossover: CrossoverKind) -> Result<Self> {
        let n = target.n();
        if n < 2 {
            return Err(HarnessError::config(
                "instance",
                "target graph needs at least two nodes",
            ));
        }
        if crossover == CrossoverKind::Quotient && n > graph::DEFAULT_EXACT_BOUND {
            return Err(HarnessError::config(
                "crossover",
                format!(
                    "exact graph matching supports at most {} nodes; use `quotient-heuristic`",
                    graph::DEFAULT_EXACT_BOUND
                ),
            ));
        }
        let pairs = (n * (n - 1) / 2) as f64;
        Ok(DegreeSequence {
            target_degrees: sorted_degrees(&target),
            target_triangles: triangle_count(&target),
            density: target.edge_count() as f64 / pairs,
            target,
            crossover,
        })
    }
}

impl Problem for DegreeSequence {
    type Genotype = AdjMatrix;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn random(&self, rng: &mut dyn RngCore) -> AdjMatrix {
        AdjMatrix::random(self.target.n(), self.density, rng)
    }

    fn fitness(&self, g: &AdjMatrix) -> f64 {
        let l1: usize = sorted_degrees(g)
            .iter()
            .zip(&self.target_degrees)
            .map(|(&a, &b)| a.abs_diff(b))
            .sum();
        (l1 + triangle_count(g).abs_diff(self.target_triangles)) as f64
    }

    fn crossover(&self, p1: &AdjMatrix, p2: &AdjMatrix, rng: &mut dyn RngCore) -> Result<AdjMatrix> {
        Ok(match self.crossover {
            CrossoverKind::Genotypic => graph::genotypic_crossover(p1, p2, rng)?,
            CrossoverKind::Quotient => graph_li_crossover(p1, p2, GraphLiMode::EXACT, rng)?,
            CrossoverKind::QuotientHeuristic => {
                let mode = GraphLiMode::heuristic(rng.next_u64());
                graph_li_crossover(p1, p2, mode, rng)?
            }
        })
    }

    /// Flips each unordered node pair with probability `rate`.
    fn mutate(&self, g: &AdjMatrix, rate: f64, rng: &mut dyn RngCore) -> AdjMatrix {
        let mut out = g.clone();
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                if flip(rng, rate) {
                    out.set_edge(i, j, !g.has_edge(i, j));
                }
            }
        }
        out
    }

    fn genotypic_distance(&self, a: &AdjMatrix, b: &AdjMatrix) -> Result<u64> {
        Ok(cell_hamming(a, b)?)
    }

    fn quotient_distance(&self, a: &AdjMatrix, b: &AdjMatrix) -> Option<Result<u64>> {
        (a.n() <= GRAPH_QUOTIENT_DIVERSITY_MAX).then(|| graph_li_distance(a, b, GraphLiMode::EXACT).map_err(Into::into))
    }

    fn is_valid(&self, g: &AdjMatrix) -> bool {
        g.n() == self.target.n() && g.is_valid()
    }
}

// ---------------------------------------------------------------------------

/// Learn a classifier over binary strings; fitness is the number of
/// misclassified strings of length `0..=FSM_MAX_INPUT`, minimized.
#[derive(Debug, Clone)]
pub struct FsmClassifier {
    pub task: FsmTask,
    pub states: usize,
    pub crossover: CrossoverKind,
    cases: Vec<(Vec<usize>, u32)>,
}

impl FsmClassifier {
    pub fn new(task: FsmTask, states: usize, crossover: CrossoverKind) -> Self {
        let cases = all_strings(2, FSM_MAX_INPUT)
            .into_iter()
            .map(|s| {
                let label = match task {
                    FsmTask::Parity => (s.iter().sum::<usize>() % 2) as u32,
                    FsmTask::Mod3 => s.iter().fold(0, |acc, &b| (2 * acc + b) % 3) as u32,
                };
                (s, label)
            })
            .collect();
        FsmClassifier {
            task,
            states,
            crossover,
            cases,
        }
    }

    pub fn labels(&self) -> u32 {
        match self.task {
            FsmTask::Parity => 2,
            FsmTask::Mod3 => 3,
        }
    }
}

impl Problem for FsmClassifier {
    type Genotype = FsmTable;

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn random(&self, rng: &mut dyn RngCore) -> FsmTable {
        FsmTable::random(self.states, 2, self.labels(), rng)
    }

    fn fitness(&self, g: &FsmTable) -> f64 {
        self.cases.iter().filter(|(s, label)| g.classify(s) != *label).count() as f64
    }

    fn crossover(&self, p1: &FsmTable, p2: &FsmTable, rng: &mut dyn RngCore) -> Result<FsmTable> {
        Ok(match self.crossover {
            CrossoverKind::Genotypic => table_crossover(p1, p2, rng)?,
            CrossoverKind::Quotient | CrossoverKind::QuotientHeuristic => fsm_crossover(p1, p2, rng)?,
        })
    }

    /// Resamples each transition and output cell with probability `rate`.
    fn mutate(&self, g: &FsmTable, rate: f64, rng: &mut dyn RngCore) -> FsmTable {
        let n = g.n_states();
        let delta = g
            .delta()
            .iter()
            .map(|&s| if flip(rng, rate) { rng.gen_range(0..n) } else { s })
            .collect();
        let outputs = g
            .outputs()
            .iter()
            .map(|&o| {
                if flip(rng, rate) {
                    rng.gen_range(0..self.labels())
                } else {
                    o
                }
            })
            .collect();
        FsmTable::new(n, g.alphabet(), delta, outputs, g.start()).expect("cells resampled in range")
    }

    fn genotypic_distance(&self, a: &FsmTable, b: &FsmTable) -> Result<u64> {
        Ok(table_hamming(a, b)?)
    }

    fn quotient_distance(&self, _: &FsmTable, _: &FsmTable) -> Option<Result<u64>> {
        None
    }

    fn is_valid(&self, g: &FsmTable) -> bool {
        g.is_valid() && g.n_states() == self.states && g.outputs().iter().all(|&o| o < self.labels())
    }
}
