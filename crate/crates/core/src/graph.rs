// SPDX-License-Identifier: Apache-2.0

//! Labeled simple graphs as symmetric 0/1 adjacency matrices.
//!
//! Relabeling the nodes of a graph gives another matrix for the same
//! unlabeled graph. The labeling-independent distance is the Hamming
//! distance to the best relabeling of the second graph, counted in matrix
//! cells (two per differing edge). It is computed exactly by branch and
//! bound for small graphs, or bounded from above by hill climbing.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::combinatorics::{factorial, is_permutation, next_permutation, permutations};
use crate::metric::{Crossover, Metric};
use crate::quotient::EquivRelation;
use crate::rng::stream_rng;
use crate::{Error, Result};

/// Largest graph [`GraphLiMode::Exact`] accepts unless configured otherwise.
pub const DEFAULT_EXACT_BOUND: usize = 8;
pub const DEFAULT_RESTARTS: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl AdjMatrix {
    pub fn empty(n: usize) -> Self {
        AdjMatrix {
            n,
            cells: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = AdjMatrix::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(
                    "edge",
                    alloc::format!("({u}, {v}) references a node outside 0..{n}"),
                ));
            }
            if u == v {
                return Err(Error::invalid("edge", alloc::format!("self-loop on node {u}")));
            }
            if m.has_edge(u, v) {
                return Err(Error::invalid("edge", alloc::format!("duplicate edge ({u}, {v})")));
            }
            m.set_edge(u, v, true);
        }
        Ok(m)
    }

    /// Builds a graph from a full row-major matrix, checking symmetry and the
    /// zero diagonal.
    pub fn from_matrix(n: usize, cells: Vec<bool>) -> Result<Self> {
        Error::check_dims("adjacency matrix cells", cells.len(), n * n)?;
        for i in 0..n {
            if cells[i * n + i] {
                return Err(Error::invalid("adjacency matrix", "non-zero diagonal"));
            }
            for j in 0..i {
                if cells[i * n + j] != cells[j * n + i] {
                    return Err(Error::invalid("adjacency matrix", "not symmetric"));
                }
            }
        }
        Ok(AdjMatrix { n, cells })
    }

    /// Graph whose upper-triangle cells, read row by row, are the low bits
    /// of `code`.
    pub fn from_upper_code(n: usize, code: u64) -> Self {
        let mut m = AdjMatrix::empty(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                m.set_edge(i, j, (code >> bit) & 1 == 1);
                bit += 1;
            }
        }
        m
    }

    pub fn random(n: usize, edge_prob: f64, rng: &mut dyn RngCore) -> Self {
        let mut m = AdjMatrix::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(edge_prob) {
                    m.set_edge(i, j, true);
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j]
    }

    pub fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        assert!(i != j, "simple graphs have no self-loops");
        self.cells[i * self.n + j] = on;
        self.cells[j * self.n + i] = on;
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Symmetric with a zero diagonal.
    pub fn is_valid(&self) -> bool {
        self.cells.len() == self.n * self.n
            && (0..self.n).all(|i| !self.has_edge(i, i) && (0..i).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }
}

/// A bijection on node ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePermutation(Vec<usize>);

impl NodePermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        if !is_permutation(&perm) {
            return Err(Error::invalid("node permutation", "not a bijection on 0..n"));
        }
        Ok(NodePermutation(perm))
    }

    pub fn identity(n: usize) -> Self {
        NodePermutation((0..n).collect())
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
}

/// `result[p(i)][p(j)] = a[i][j]`, i.e. `P A P^T`.
pub fn relabel(a: &AdjMatrix, p: &NodePermutation) -> Result<AdjMatrix> {
    Error::check_dims("node permutation", p.len(), a.n)?;
    let n = a.n;
    let mut out = AdjMatrix::empty(n);
    for i in 0..n {
        for j in 0..n {
            out.cells[p.0[i] * n + p.0[j]] = a.cells[i * n + j];
        }
    }
    Ok(out)
}

/// Differing matrix cells; twice the number of differing edges.
pub fn cell_hamming(a: &AdjMatrix, b: &AdjMatrix) -> Result<u64> {
    Error::check_dims("adjacency matrix size", a.n, b.n)?;
    Ok(a.cells.iter().zip(&b.cells).filter(|(x, y)| x != y).count() as u64)
}

/// The same distance in edges instead of cells.
pub fn edge_edit_distance(a: &AdjMatrix, b: &AdjMatrix, mode: GraphLiMode) -> Result<u64> {
    Ok(graph_li_distance(a, b, mode)? / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphLiMode {
    /// Branch and bound over all relabelings; rejects graphs above `bound` nodes.
    Exact { bound: usize },
    /// Degree-seeded 2-swap hill climbing with `restarts` starts. Restart `r`
    /// (r >= 1) starts from a random permutation on stream `r` of `seed`.
    Heuristic { restarts: u32, seed: u64 },
}

impl GraphLiMode {
    pub const EXACT: GraphLiMode = GraphLiMode::Exact {
        bound: DEFAULT_EXACT_BOUND,
    };

    pub fn heuristic(seed: u64) -> Self {
        GraphLiMode::Heuristic {
            restarts: DEFAULT_RESTARTS,
            seed,
        }
    }
}

/// Cost of mapping node `i` of `b` to node `map[i]` of `a`, in cells.
fn mapped_cost(a: &AdjMatrix, b: &AdjMatrix, map: &[usize]) -> u64 {
    let n = a.n;
    let mut cost = 0;
    for i in 0..n {
        for j in i + 1..n {
            if b.has_edge(i, j) != a.has_edge(map[i], map[j]) {
                cost += 2;
            }
        }
    }
    cost
}

struct BranchAndBound<'a> {
    a: &'a AdjMatrix,
    b: &'a AdjMatrix,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    best: u64,
    best_map: Vec<usize>,
    floor: u64,
}

impl BranchAndBound<'_> {
    /// Lower bound on the cells still to be paid, given the first `depth`
    /// nodes of `order` are mapped. Pairs touching an unmapped node split
    /// into (mapped, unmapped) pairs grouped by the mapped node and
    /// (unmapped, unmapped) pairs; within each group the edge counts of the
    /// two graphs can only be matched up to their difference.
    fn remaining_bound(&self, depth: usize) -> u64 {
        let (a, b) = (self.a, self.b);
        let free_b = &self.order[depth..];
        let free_a: Vec<usize> = (0..a.n).filter(|&v| !self.used[v]).collect();
        let mut bound = 0u64;
        for &i in &self.order[..depth] {
            let eb = free_b.iter().filter(|&&j| b.has_edge(i, j)).count();
            let ea = free_a.iter().filter(|&&v| a.has_edge(self.map[i], v)).count();
            bound += eb.abs_diff(ea) as u64;
        }
        let mut eb = 0;
        let mut ea = 0;
        for x in 0..free_b.len() {
            for y in x + 1..free_b.len() {
                eb += b.has_edge(free_b[x], free_b[y]) as usize;
                ea += a.has_edge(free_a[x], free_a[y]) as usize;
            }
        }
        bound += eb.abs_diff(ea) as u64;
        2 * bound
    }

    fn search(&mut self, depth: usize, cost: u64) {
        if self.best == self.floor {
            return;
        }
        let n = self.a.n;
        if depth == n {
            if cost < self.best {
                self.best = cost;
                self.best_map = self.map.clone();
            }
            return;
        }
        let i = self.order[depth];
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let mut extra = 0;
            for &j in &self.order[..depth] {
                if self.b.has_edge(i, j) != self.a.has_edge(v, self.map[j]) {
                    extra += 2;
                }
            }
            let cost = cost + extra;
            if cost >= self.best {
                continue;
            }
            self.map[i] = v;
            self.used[v] = true;
            if cost + self.remaining_bound(depth + 1) < self.best {
                self.search(depth + 1, cost);
            }
            self.used[v] = false;
            if self.best == self.floor {
                return;
            }
        }
    }
}

fn exact_matching(a: &AdjMatrix, b: &AdjMatrix) -> (Vec<usize>, u64) {
    let n = a.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(b.degree(i)));
    let floor = 2 * a.edge_count().abs_diff(b.edge_count()) as u64;
    let mut bb = BranchAndBound {
        a,
        b,
        order,
        map: vec![0; n],
        used: vec![false; n],
        best: u64::MAX,
        best_map: (0..n).collect(),
        floor,
    };
    bb.search(0, 0);
    (bb.best_map, bb.best)
}

/// Change in cost from swapping the images of `i` and `j`.
fn swap_delta(a: &AdjMatrix, b: &AdjMatrix, map: &[usize], i: usize, j: usize) -> i64 {
    let mut delta = 0i64;
    let (mi, mj) = (map[i], map[j]);
    for (t, &mt) in map.iter().enumerate() {
        if t == i || t == j {
            continue;
        }
        let before = (b.has_edge(i, t) != a.has_edge(mi, mt)) as i64 + (b.has_edge(j, t) != a.has_edge(mj, mt)) as i64;
        let after = (b.has_edge(i, t) != a.has_edge(mj, mt)) as i64 + (b.has_edge(j, t) != a.has_edge(mi, mt)) as i64;
        delta += after - before;
    }
    2 * delta
}

fn hill_climb(a: &AdjMatrix, b: &AdjMatrix, mut map: Vec<usize>) -> (Vec<usize>, u64) {
    let n = a.n;
    let mut cost = mapped_cost(a, b, &map);
    loop {
        let mut best = (0i64, 0, 0);
        for i in 0..n {
            for j in i + 1..n {
                let d = swap_delta(a, b, &map, i, j);
                if d < best.0 {
                    best = (d, i, j);
                }
            }
        }
        if best.0 == 0 {
            return (map, cost);
        }
        map.swap(best.1, best.2);
        cost = (cost as i64 + best.0) as u64;
    }
}

fn degree_seed(a: &AdjMatrix, b: &AdjMatrix) -> Vec<usize> {
    let n = a.n;
    let mut na: Vec<usize> = (0..n).collect();
    let mut nb: Vec<usize> = (0..n).collect();
    na.sort_by_key(|&v| core::cmp::Reverse(a.degree(v)));
    nb.sort_by_key(|&v| core::cmp::Reverse(b.degree(v)));
    let mut map = vec![0; n];
    for (x, y) in nb.into_iter().zip(na) {
        map[x] = y;
    }
    map
}

fn heuristic_matching(a: &AdjMatrix, b: &AdjMatrix, restarts: u32, seed: u64) -> (Vec<usize>, u64) {
    let mut best = hill_climb(a, b, degree_seed(a, b));
    for r in 1..restarts.max(1) {
        let mut start: Vec<usize> = (0..a.n).collect();
        start.shuffle(&mut stream_rng(seed, u64::from(r)));
        let cand = hill_climb(a, b, start);
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

/// Best node map from `b` onto `a` found by `mode` and its cell cost.
/// `map[i]` is the node of `a` that node `i` of `b` is sent to.
pub fn graph_matching(a: &AdjMatrix, b: &AdjMatrix, mode: GraphLiMode) -> Result<(NodePermutation, u64)> {
    Error::check_dims("adjacency matrix size", a.n, b.n)?;
    let (map, cost) = match mode {
        GraphLiMode::Exact { bound } => {
            if a.n > bound {
                return Err(Error::Capacity {
                    what: "exact graph matching nodes",
                    size: a.n as u128,
                    bound: bound as u128,
                });
            }
            exact_matching(a, b)
        }
        GraphLiMode::Heuristic { restarts, seed } => heuristic_matching(a, b, restarts, seed),
    };
    Ok((NodePermutation(map), cost))
}

/// Labeling-independent distance in matrix cells. Heuristic mode returns an
/// upper bound.
pub fn graph_li_distance(a: &AdjMatrix, b: &AdjMatrix, mode: GraphLiMode) -> Result<u64> {
    Ok(graph_matching(a, b, mode)?.1)
}

/// Relabels `p2` to be as close as `mode` can find to `p1`.
pub fn graph_match_normalize(p1: &AdjMatrix, p2: &AdjMatrix, mode: GraphLiMode) -> Result<AdjMatrix> {
    let (p, _) = graph_matching(p1, p2, mode)?;
    relabel(p2, &p)
}

/// Uniform crossover on upper-triangle cells, mirrored.
pub fn genotypic_crossover(p1: &AdjMatrix, p2: &AdjMatrix, rng: &mut dyn RngCore) -> Result<AdjMatrix> {
    Error::check_dims("adjacency matrix size", p1.n, p2.n)?;
    let n = p1.n;
    let mut child = AdjMatrix::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let src = if rng.gen_bool(0.5) { p1 } else { p2 };
            child.set_edge(i, j, src.has_edge(i, j));
        }
    }
    Ok(child)
}

/// Matches `p2` to `p1`, then recombines cell-wise.
pub fn graph_li_crossover(
    p1: &AdjMatrix,
    p2: &AdjMatrix,
    mode: GraphLiMode,
    rng: &mut dyn RngCore,
) -> Result<AdjMatrix> {
    let p2 = graph_match_normalize(p1, p2, mode)?;
    genotypic_crossover(p1, &p2, rng)
}

#[derive(Debug, Clone, Copy)]
pub struct GraphLiDistance(pub GraphLiMode);

impl Metric<AdjMatrix> for GraphLiDistance {
    fn distance(&self, a: &AdjMatrix, b: &AdjMatrix) -> Result<u64> {
        graph_li_distance(a, b, self.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CellHamming;

impl Metric<AdjMatrix> for CellHamming {
    fn distance(&self, a: &AdjMatrix, b: &AdjMatrix) -> Result<u64> {
        cell_hamming(a, b)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GraphLiCrossover(pub GraphLiMode);

impl Crossover<AdjMatrix> for GraphLiCrossover {
    fn crossover(&self, p1: &AdjMatrix, p2: &AdjMatrix, rng: &mut dyn RngCore) -> Result<AdjMatrix> {
        graph_li_crossover(p1, p2, self.0, rng)
    }
}

/// Graphs are equivalent when they are isomorphic. Classes are enumerated by
/// applying all n! node permutations in lexicographic order.
#[derive(Debug, Clone, Copy, Default)]
pub struct NodeRelabeling;

impl EquivRelation<AdjMatrix> for NodeRelabeling {
    fn same_class(&self, a: &AdjMatrix, b: &AdjMatrix) -> bool {
        a.n == b.n && canonical_form(a) == canonical_form(b)
    }

    fn class_size(&self, x: &AdjMatrix) -> u128 {
        factorial(x.n)
    }

    fn class_members(&self, x: &AdjMatrix) -> Vec<AdjMatrix> {
        permutations(x.n)
            .into_iter()
            .map(|p| relabel(x, &NodePermutation(p)).expect("same size"))
            .collect()
    }
}

/// Lexicographically smallest cell vector over all relabelings. Two graphs
/// are isomorphic iff their canonical forms are equal.
pub fn canonical_form(a: &AdjMatrix) -> AdjMatrix {
    let mut perm: Vec<usize> = (0..a.n).collect();
    let mut best = a.clone();
    loop {
        let cand = relabel(a, &NodePermutation(perm.clone())).expect("same size");
        if cand.cells < best.cells {
            best = cand;
        }
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Number of non-isomorphic simple graphs on `n` nodes, by canonicalizing
/// every labeled graph.
pub fn unlabeled_census(n: usize) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 64, "census limited to n <= 11");
    let mut forms: Vec<Vec<bool>> = (0..1u64 << pairs)
        .map(|code| canonical_form(&AdjMatrix::from_upper_code(n, code)).cells)
        .collect();
    forms.sort();
    forms.dedup();
    forms.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> AdjMatrix {
        AdjMatrix::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> AdjMatrix {
        AdjMatrix::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn brute(a: &AdjMatrix, b: &AdjMatrix) -> u64 {
        permutations(a.n)
            .into_iter()
            .map(|p| cell_hamming(a, &relabel(b, &NodePermutation(p)).unwrap()).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn loader_rejects_non_simple_graphs() {
        assert!(AdjMatrix::from_edges(3, &[(0, 0)]).is_err());
        assert!(AdjMatrix::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(AdjMatrix::from_edges(3, &[(0, 3)]).is_err());
        assert!(AdjMatrix::from_matrix(2, vec![false, true, false, false]).is_err());
        assert!(AdjMatrix::from_matrix(2, vec![false, true, true, false]).is_ok());
    }

    #[test]
    fn relabel_examples() {
        let p = path3();
        assert_eq!(relabel(&p, &NodePermutation::identity(3)).unwrap(), p);
        let swapped = relabel(&p, &NodePermutation::new(vec![2, 1, 0]).unwrap()).unwrap();
        assert_eq!(swapped.edges(), p.edges());
        for perm in permutations(3) {
            assert_eq!(relabel(&triangle(), &NodePermutation(perm)).unwrap(), triangle());
        }
        let moved = relabel(&p, &NodePermutation::new(vec![1, 0, 2]).unwrap()).unwrap();
        assert_eq!(moved.edges(), [(0, 1), (0, 2)]);
        assert!(moved.is_valid());
    }

    #[test]
    fn distance_examples() {
        let p = path3();
        assert_eq!(graph_li_distance(&p, &p, GraphLiMode::EXACT).unwrap(), 0);
        let other = AdjMatrix::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(graph_li_distance(&p, &other, GraphLiMode::EXACT).unwrap(), 0);
        // One edge apart, two matrix cells.
        assert_eq!(brute(&p, &triangle()), 2);
        assert_eq!(graph_li_distance(&p, &triangle(), GraphLiMode::EXACT).unwrap(), 2);
        assert_eq!(edge_edit_distance(&p, &triangle(), GraphLiMode::EXACT).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let big = AdjMatrix::empty(9);
        assert!(matches!(
            graph_li_distance(&big, &big, GraphLiMode::EXACT),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            graph_li_distance(&path3(), &AdjMatrix::empty(4), GraphLiMode::EXACT),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(relabel(&path3(), &NodePermutation::identity(4)).is_err());
        assert!(NodePermutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn exact_matches_brute_force_and_heuristic_is_upper_bound() {
        let mut rng = stream_rng(5, 0);
        for n in 1..=6 {
            for t in 0..30 {
                let a = AdjMatrix::random(n, 0.5, &mut rng);
                let b = AdjMatrix::random(n, 0.5, &mut rng);
                let exact = graph_li_distance(&a, &b, GraphLiMode::EXACT).unwrap();
                assert_eq!(exact, brute(&a, &b));
                let norm = graph_match_normalize(&a, &b, GraphLiMode::EXACT).unwrap();
                assert_eq!(cell_hamming(&a, &norm).unwrap(), exact);
                assert!(NodeRelabeling.same_class(&norm, &b));
                let h = graph_li_distance(&a, &b, GraphLiMode::heuristic(t)).unwrap();
                assert!(h >= exact);
            }
        }
    }

    #[test]
    fn crossover_keeps_symmetry_and_equal_parents() {
        let mut rng = stream_rng(1, 0);
        let a = AdjMatrix::random(6, 0.4, &mut rng);
        for _ in 0..20 {
            let c = graph_li_crossover(&a, &a, GraphLiMode::EXACT, &mut rng).unwrap();
            assert_eq!(c, a);
            let b = AdjMatrix::random(6, 0.4, &mut rng);
            let c = graph_li_crossover(&a, &b, GraphLiMode::heuristic(0), &mut rng).unwrap();
            assert!(c.is_valid());
        }
    }

    #[test]
    fn census_small() {
        assert_eq!(unlabeled_census(1), 1);
        assert_eq!(unlabeled_census(2), 2);
        assert_eq!(unlabeled_census(3), 4);
        assert_eq!(unlabeled_census(4), 11);
    }
}
