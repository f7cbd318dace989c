// SPDX-License-Identifier: Apache-2.0

//! Oracle suites run by `geoxover verify`. Each check compares a fast
//! implementation against brute force, or counts axiom and segment
//! violations, on small exhaustive or seeded samples.

use std::fmt;
use std::str::FromStr;

use geoxover_core::combinatorics::permutations;
use geoxover_core::crossover::BaseCrossover;
use geoxover_core::fsm::{fsm_canonicalize, fsm_crossover, table_hamming, FsmTable};
use geoxover_core::graph::{
    graph_li_distance, unlabeled_census, AdjMatrix, CellHamming, GraphLiCrossover, GraphLiDistance, GraphLiMode,
    NodeRelabeling,
};
use geoxover_core::grouping::{li_distance, GroupingHamming, KaryVector, LiCrossover, LiDistance, Relabeling};
use geoxover_core::rng::stream_rng;
use geoxover_core::sequence::{edit_distance, EditDistance, HomologousCrossover, Seq};
use geoxover_core::tour::{
    canonical_tours, reversal_crossover, Perm, ReversalDistance, Rotation, TourEquivalence, TourReversalDistance,
    TrajectoryMode,
};
use geoxover_core::{
    check_geometricity, check_metric_axioms, quotient_distance_bruteforce, segment_contains, AxiomCheck, Hamming,
    IdentityRelation, Metric,
};
use rand::{Rng, RngCore};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Metric,
    Quotient,
    Grouping,
    Graph,
    Sequence,
    Tour,
    Fsm,
    All,
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "metric" => Suite::Metric,
            "quotient" => Suite::Quotient,
            "grouping" => Suite::Grouping,
            "graph" => Suite::Graph,
            "sequence" => Suite::Sequence,
            "tour" => Suite::Tour,
            "fsm" => Suite::Fsm,
            "all" => Suite::All,
            other => return Err(HarnessError::config("suite", format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: {} violation(s) in {} case(s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.violations,
            self.checked
        )
    }
}

fn outcome(suite: &'static str, name: &'static str, checked: u64, violations: u64) -> CheckOutcome {
    CheckOutcome {
        suite,
        name,
        checked,
        violations,
    }
}

fn axioms<P: PartialEq, M: Metric<P>>(
    suite: &'static str,
    name: &'static str,
    points: &[P],
    d: &M,
    pseudo: bool,
) -> Result<CheckOutcome> {
    let check = AxiomCheck {
        pseudo,
        ..AxiomCheck::default()
    };
    let report = check_metric_axioms(points, d, check)?;
    Ok(outcome(suite, name, report.triples_checked, report.violations() as u64))
}

fn all_bits(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .map(|c| (0..n).map(|i| ((c >> i) & 1) as u8).collect())
        .collect()
}

fn all_kary(n: usize, k: u32) -> Vec<KaryVector> {
    let total = (k as usize).pow(n as u32);
    (0..total)
        .map(|mut c| {
            let labels = (0..n)
                .map(|_| {
                    let l = (c % k as usize) as u32 + 1;
                    c /= k as usize;
                    l
                })
                .collect();
            KaryVector::new(labels, k).expect("labels in 1..=k")
        })
        .collect()
}

fn all_graphs(n: usize) -> Vec<AdjMatrix> {
    let bits = n * n.saturating_sub(1) / 2;
    (0..1u64 << bits).map(|c| AdjMatrix::from_upper_code(n, c)).collect()
}

fn binary_seqs(max_len: usize) -> Vec<Seq> {
    (0..=max_len)
        .flat_map(|len| {
            all_bits(len)
                .into_iter()
                .map(|b| Seq::new(b.iter().map(|&x| b'0' + x).collect()).unwrap())
        })
        .collect()
}

fn metric_suite() -> Result<Vec<CheckOutcome>> {
    let pts = all_bits(4);
    let random = |a: &Vec<u8>, _: &Vec<u8>, r: &mut dyn RngCore| -> geoxover_core::Result<Vec<u8>> {
        Ok((0..a.len()).map(|_| r.gen_range(0..2u8)).collect())
    };
    let mut rng = stream_rng(7, 0);
    let pairs: Vec<_> = (0..100)
        .map(|_| {
            let a: Vec<u8> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            let b: Vec<u8> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            (a, b)
        })
        .collect();
    let control = check_geometricity(&random, &Hamming, &pairs, 50, 8)?;
    let detected = control.violation_rate() > 0.05;
    let uniform = |a: &Vec<u8>, b: &Vec<u8>, r: &mut dyn RngCore| BaseCrossover::Uniform.apply(a, b, r);
    let geo = check_geometricity(&uniform, &Hamming, &pairs, 10, 9)?;
    Ok(vec![
        axioms("metric", "hamming-axioms", &pts, &Hamming, false)?,
        outcome(
            "metric",
            "uniform-crossover-geometric",
            geo.total,
            geo.violations.len() as u64,
        ),
        outcome("metric", "negative-control-detected", 1, u64::from(!detected)),
    ])
}

fn quotient_suite() -> Result<Vec<CheckOutcome>> {
    let pts = all_kary(4, 3);
    let mut bad = 0;
    let mut checked = 0;
    for a in &pts {
        for b in &pts {
            checked += 1;
            let brute = quotient_distance_bruteforce(a, b, &GroupingHamming, &Relabeling)?;
            let identity = quotient_distance_bruteforce(a, b, &GroupingHamming, &IdentityRelation)?;
            bad += u64::from(brute != li_distance(a, b)? || identity != GroupingHamming.distance(a, b)?);
        }
    }
    Ok(vec![outcome(
        "quotient",
        "bruteforce-matches-specialized",
        checked,
        bad,
    )])
}

fn grouping_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut rng = stream_rng(11, 0);
    let (mut checked, mut bad) = (0, 0);
    for k in 2..=4u32 {
        for n in 3..=7usize {
            for _ in 0..100 {
                let (a, b) = (KaryVector::random(n, k, &mut rng), KaryVector::random(n, k, &mut rng));
                checked += 1;
                bad += u64::from(
                    li_distance(&a, &b)? != quotient_distance_bruteforce(&a, &b, &GroupingHamming, &Relabeling)?,
                );
            }
        }
    }
    out.push(outcome("grouping", "li-vs-bruteforce", checked, bad));
    out.push(axioms("grouping", "li-axioms", &all_kary(5, 3), &LiDistance, true)?);
    let pairs: Vec<_> = (0..300)
        .map(|_| (KaryVector::random(8, 3, &mut rng), KaryVector::random(8, 3, &mut rng)))
        .collect();
    let geo = check_geometricity(&LiCrossover::default(), &LiDistance, &pairs, 3, 12)?;
    out.push(outcome(
        "grouping",
        "li-crossover-geometric",
        geo.total,
        geo.violations.len() as u64,
    ));
    Ok(out)
}

fn graph_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut rng = stream_rng(13, 0);
    let (mut checked, mut bad) = (0, 0);
    for n in 3..=5 {
        for _ in 0..50 {
            let (a, b) = (AdjMatrix::random(n, 0.5, &mut rng), AdjMatrix::random(n, 0.5, &mut rng));
            checked += 1;
            let brute = quotient_distance_bruteforce(&a, &b, &CellHamming, &NodeRelabeling)?;
            bad += u64::from(graph_li_distance(&a, &b, GraphLiMode::EXACT)? != brute);
        }
    }
    out.push(outcome("graph", "li-vs-bruteforce", checked, bad));
    out.push(axioms(
        "graph",
        "li-axioms",
        &all_graphs(4),
        &GraphLiDistance(GraphLiMode::EXACT),
        true,
    )?);
    let pairs: Vec<_> = (0..60)
        .map(|_| (AdjMatrix::random(5, 0.5, &mut rng), AdjMatrix::random(5, 0.5, &mut rng)))
        .collect();
    let exact = GraphLiDistance(GraphLiMode::EXACT);
    let geo = check_geometricity(&GraphLiCrossover(GraphLiMode::EXACT), &exact, &pairs, 3, 14)?;
    out.push(outcome(
        "graph",
        "li-crossover-geometric",
        geo.total,
        geo.violations.len() as u64,
    ));
    let census = [(3, 4), (4, 11)];
    let off = census.iter().filter(|&&(n, c)| unlabeled_census(n) != c).count() as u64;
    out.push(outcome("graph", "unlabeled-census", census.len() as u64, off));
    Ok(out)
}

fn sequence_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let seqs = binary_seqs(3);
    out.push(axioms("sequence", "edit-axioms", &seqs, &EditDistance, false)?);
    let mut bad = 0;
    let mut checked = 0;
    for a in &seqs {
        for b in &seqs {
            checked += 1;
            // Symmetric difference of lengths plus substitutions bounds the
            // distance from both sides.
            let d = edit_distance(a, b);
            let lo = a.len().abs_diff(b.len()) as u64;
            bad += u64::from(d < lo || d > a.len().max(b.len()) as u64);
        }
    }
    out.push(outcome("sequence", "edit-length-bounds", checked, bad));
    let mut rng = stream_rng(15, 0);
    let random_seq = |rng: &mut dyn RngCore| {
        let len = rng.gen_range(0..=12);
        Seq::new((0..len).map(|_| b"acgt"[rng.gen_range(0..4)]).collect()).unwrap()
    };
    let pairs: Vec<_> = (0..300).map(|_| (random_seq(&mut rng), random_seq(&mut rng))).collect();
    let geo = check_geometricity(&HomologousCrossover::default(), &EditDistance, &pairs, 3, 16)?;
    out.push(outcome(
        "sequence",
        "homologous-geometric",
        geo.total,
        geo.violations.len() as u64,
    ));
    Ok(out)
}

fn tour_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let eq = TourEquivalence::default();
    let quotient = TourReversalDistance::new(5, eq, 8)?;
    let canon = canonical_tours(5);
    let (mut checked, mut bad) = (0, 0);
    for a in &canon {
        for b in &canon {
            checked += 1;
            let brute = quotient_distance_bruteforce(a, b, &ReversalDistance::default(), &Rotation(eq))?;
            bad += u64::from(quotient.distance(a, b)? != brute);
        }
    }
    out.push(outcome("tour", "quotient-vs-bruteforce", checked, bad));
    let all: Vec<Perm> = permutations(5).into_iter().map(|p| Perm::new(p).unwrap()).collect();
    out.push(axioms(
        "tour",
        "reversal-axioms",
        &all,
        &ReversalDistance::default(),
        false,
    )?);
    out.push(axioms("tour", "tour-quotient-axioms", &canon, &quotient, false)?);
    let mut rng = stream_rng(17, 0);
    let (mut checked, mut bad) = (0, 0);
    for t in 0..150 {
        let n = 3 + t % 5;
        let (p1, p2) = (Perm::random(n, &mut rng), Perm::random(n, &mut rng));
        let target = geoxover_core::tour::circ_normalize(&p1, &p2, eq)?;
        let z = reversal_crossover(&p1, &p2, TrajectoryMode::EXACT, eq, &mut rng)?;
        checked += 1;
        bad += u64::from(!segment_contains(&p1, &target, &z, &ReversalDistance::default())?);
    }
    out.push(outcome("tour", "reversal-crossover-geometric", checked, bad));
    Ok(out)
}

fn fsm_suite() -> Result<Vec<CheckOutcome>> {
    let mut rng = stream_rng(19, 0);
    let (mut checked, mut canon_bad, mut geo_bad) = (0, 0, 0);
    for _ in 0..300 {
        let a = FsmTable::random(3, 2, 2, &mut rng);
        let b = FsmTable::random(3, 2, 2, &mut rng);
        checked += 1;
        let ca = fsm_canonicalize(&a);
        let strings = geoxover_core::fsm::all_strings(2, 6);
        canon_bad += u64::from(fsm_canonicalize(&ca) != ca || strings.iter().any(|s| ca.classify(s) != a.classify(s)));
        let cb = fsm_canonicalize(&b);
        let child = fsm_crossover(&a, &b, &mut rng)?;
        geo_bad += u64::from(
            !child.is_valid() || table_hamming(&ca, &child)? + table_hamming(&child, &cb)? != table_hamming(&ca, &cb)?,
        );
    }
    Ok(vec![
        outcome("fsm", "canonical-form-idempotent-and-equivalent", checked, canon_bad),
        outcome("fsm", "crossover-on-canonical-segment", checked, geo_bad),
    ])
}

/// Runs one suite (or all of them) and returns every outcome.
pub fn run_suite(suite: Suite) -> Result<Vec<CheckOutcome>> {
    Ok(match suite {
        Suite::Metric => metric_suite()?,
        Suite::Quotient => quotient_suite()?,
        Suite::Grouping => grouping_suite()?,
        Suite::Graph => graph_suite()?,
        Suite::Sequence => sequence_suite()?,
        Suite::Tour => tour_suite()?,
        Suite::Fsm => fsm_suite()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Metric,
                Suite::Quotient,
                Suite::Grouping,
                Suite::Graph,
                Suite::Sequence,
                Suite::Tour,
                Suite::Fsm,
            ] {
                all.extend(run_suite(s)?);
            }
            all
        }
    })
}
