// SPDX-License-Identifier: Apache-2.0

//! Deterministic finite-state classifiers as transition tables, with
//! state renumbering to a normal form before table crossover.
//!
//! Renumbering states does not change what a machine computes, so machines
//! that differ only by state names are redundant encodings of one
//! classifier. Canonicalization renumbers states in breadth-first discovery
//! order from the start state, exploring symbols in ascending order;
//! unreachable states follow in their original order. This removes the
//! naming redundancy of reachable states. It does not minimize, so
//! behaviourally equivalent machines with different structure stay apart.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::metric::{hamming, Metric};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FsmTable {
    n_states: usize,
    alphabet: usize,
    /// Row-major `n_states x alphabet`.
    delta: Vec<usize>,
    outputs: Vec<u32>,
    start: usize,
}

impl FsmTable {
    pub fn new(n_states: usize, alphabet: usize, delta: Vec<usize>, outputs: Vec<u32>, start: usize) -> Result<Self> {
        if n_states == 0 || alphabet == 0 {
            return Err(Error::invalid("fsm", "needs at least one state and one symbol"));
        }
        Error::check_dims("fsm transition table", delta.len(), n_states * alphabet)?;
        Error::check_dims("fsm outputs", outputs.len(), n_states)?;
        if delta.iter().any(|&s| s >= n_states) {
            return Err(Error::invalid("fsm", "transition to a state out of range"));
        }
        if start >= n_states {
            return Err(Error::invalid("fsm", "start state out of range"));
        }
        Ok(FsmTable {
            n_states,
            alphabet,
            delta,
            outputs,
            start,
        })
    }

    /// Uniformly random table with outputs in `0..labels`, starting at 0.
    pub fn random(n_states: usize, alphabet: usize, labels: u32, rng: &mut dyn RngCore) -> Self {
        assert!(n_states > 0 && alphabet > 0 && labels > 0);
        FsmTable {
            n_states,
            alphabet,
            delta: (0..n_states * alphabet).map(|_| rng.gen_range(0..n_states)).collect(),
            outputs: (0..n_states).map(|_| rng.gen_range(0..labels)).collect(),
            start: 0,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet + symbol]
    }

    pub fn is_valid(&self) -> bool {
        self.delta.len() == self.n_states * self.alphabet
            && self.outputs.len() == self.n_states
            && self.start < self.n_states
            && self.delta.iter().all(|&s| s < self.n_states)
    }

    /// Output label of the state reached on `input` from the start state.
    pub fn classify(&self, input: &[usize]) -> u32 {
        let state = input.iter().fold(self.start, |s, &c| self.next(s, c));
        self.outputs[state]
    }

    /// Renames state `s` to `perm[s]`.
    pub fn relabel_states(&self, perm: &[usize]) -> Result<Self> {
        Error::check_dims("state permutation", perm.len(), self.n_states)?;
        if !crate::combinatorics::is_permutation(perm) {
            return Err(Error::invalid("state permutation", "not a bijection"));
        }
        let mut delta = vec![0; self.delta.len()];
        let mut outputs = vec![0; self.n_states];
        for s in 0..self.n_states {
            outputs[perm[s]] = self.outputs[s];
            for c in 0..self.alphabet {
                delta[perm[s] * self.alphabet + c] = perm[self.next(s, c)];
            }
        }
        Ok(FsmTable {
            delta,
            outputs,
            start: perm[self.start],
            ..*self
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        Error::check_dims("fsm states", self.n_states, other.n_states)?;
        Error::check_dims("fsm alphabet", self.alphabet, other.alphabet)
    }
}

pub fn fsm_canonicalize(m: &FsmTable) -> FsmTable {
    let n = m.n_states;
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([m.start]);
    seen[m.start] = true;
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for c in 0..m.alphabet {
            let t = m.next(s, c);
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order.extend((0..n).filter(|&s| !seen[s]));
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    m.relabel_states(&perm).expect("BFS order is a permutation")
}

/// Differing transition cells, outputs and start state.
pub fn table_hamming(a: &FsmTable, b: &FsmTable) -> Result<u64> {
    a.check_compatible(b)?;
    Ok(hamming(&a.delta, &b.delta)? + hamming(&a.outputs, &b.outputs)? + u64::from(a.start != b.start))
}

/// Uniform crossover over transition cells, outputs and the start state,
/// on the tables as given.
pub fn table_crossover(p1: &FsmTable, p2: &FsmTable, rng: &mut dyn RngCore) -> Result<FsmTable> {
    p1.check_compatible(p2)?;
    let delta = p1
        .delta
        .iter()
        .zip(&p2.delta)
        .map(|(&x, &y)| if rng.gen_bool(0.5) { x } else { y })
        .collect();
    let outputs = p1
        .outputs
        .iter()
        .zip(&p2.outputs)
        .map(|(&x, &y)| if rng.gen_bool(0.5) { x } else { y })
        .collect();
    let start = if rng.gen_bool(0.5) { p1.start } else { p2.start };
    Ok(FsmTable {
        delta,
        outputs,
        start,
        ..*p1
    })
}

/// Canonicalizes both parents, then applies [`table_crossover`].
pub fn fsm_crossover(p1: &FsmTable, p2: &FsmTable, rng: &mut dyn RngCore) -> Result<FsmTable> {
    p1.check_compatible(p2)?;
    table_crossover(&fsm_canonicalize(p1), &fsm_canonicalize(p2), rng)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TableHamming;

impl Metric<FsmTable> for TableHamming {
    fn distance(&self, a: &FsmTable, b: &FsmTable) -> Result<u64> {
        table_hamming(a, b)
    }
}

/// All strings over `0..alphabet` of length `0..=max_len`, shortest first.
pub fn all_strings(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet);
        for s in &layer {
            for c in 0..alphabet {
                let mut t: Vec<usize> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutations;
    use crate::rng::stream_rng;

    /// Parity of ones over {0,1}: state = parity.
    fn parity() -> FsmTable {
        FsmTable::new(2, 2, vec![0, 1, 1, 0], vec![0, 1], 0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(FsmTable::new(2, 2, vec![0, 2, 1, 0], vec![0, 1], 0).is_err());
        assert!(FsmTable::new(2, 2, vec![0, 1, 1, 0], vec![0, 1], 2).is_err());
        assert!(FsmTable::new(2, 2, vec![0, 1, 1], vec![0, 1], 0).is_err());
        assert!(FsmTable::new(0, 2, vec![], vec![], 0).is_err());
    }

    #[test]
    fn parity_classifies() {
        let m = parity();
        assert_eq!(m.classify(&[]), 0);
        assert_eq!(m.classify(&[1, 0, 1, 1]), 1);
    }

    #[test]
    fn canonical_is_idempotent() {
        let m = parity();
        assert_eq!(fsm_canonicalize(&m), m);
        let c = fsm_canonicalize(&FsmTable::random(5, 2, 2, &mut stream_rng(1, 0)));
        assert_eq!(fsm_canonicalize(&c), c);
        assert_eq!(c.start(), 0);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant_when_reachable() {
        // 0 -> 1 -> 2 -> 0 on symbol 0, self loops on 1: all reachable.
        let m = FsmTable::new(3, 2, vec![1, 0, 2, 1, 0, 2], vec![0, 1, 2], 0).unwrap();
        let canon = fsm_canonicalize(&m);
        for perm in permutations(3) {
            assert_eq!(fsm_canonicalize(&m.relabel_states(&perm).unwrap()), canon);
        }
    }

    #[test]
    fn unreachable_state_keeps_classification() {
        // State 1 is unreachable.
        let m = FsmTable::new(3, 2, vec![2, 0, 1, 1, 0, 2], vec![0, 1, 1], 0).unwrap();
        let c = fsm_canonicalize(&m);
        for s in all_strings(2, 6) {
            assert_eq!(m.classify(&s), c.classify(&s));
        }
        assert_eq!(c.outputs()[2], 1);
    }

    #[test]
    fn crossover_examples() {
        let m = parity();
        let shuffled = m.relabel_states(&[1, 0]).unwrap();
        for s in 0..20 {
            let mut rng = stream_rng(s, 0);
            assert_eq!(fsm_crossover(&m, &m, &mut rng).unwrap(), fsm_canonicalize(&m));
            assert_eq!(fsm_crossover(&m, &shuffled, &mut rng).unwrap(), m);
        }
        let other = FsmTable::new(3, 2, vec![0; 6], vec![0; 3], 0).unwrap();
        assert!(fsm_crossover(&m, &other, &mut stream_rng(0, 0)).is_err());
    }

    #[test]
    fn string_enumeration() {
        assert_eq!(all_strings(2, 2).len(), 7);
        assert_eq!(all_strings(3, 0), vec![Vec::<usize>::new()]);
    }
}
