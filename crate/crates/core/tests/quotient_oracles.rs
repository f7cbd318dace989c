// SPDX-License-Identifier: Apache-2.0

//! Specialized quotient distances against exhaustive enumeration.

use geoxover_core::combinatorics::permutations;
use geoxover_core::fsm::{all_strings, fsm_canonicalize, FsmTable};
use geoxover_core::graph::{
    cell_hamming, graph_li_distance, relabel, AdjMatrix, CellHamming, GraphLiDistance, GraphLiMode, NodePermutation,
    NodeRelabeling,
};
use geoxover_core::grouping::{
    li_distance, li_normalize, GroupingHamming, KaryVector, LabelPermutation, LiDistance, Relabeling,
};
use geoxover_core::metric::{check_metric_axioms, hamming, AxiomCheck, Metric};
use geoxover_core::quotient::{
    normalize, quotient_distance_bruteforce, quotient_segment_contains, EquivRelation, QuotientDistance,
};
use geoxover_core::rng::stream_rng;
use geoxover_core::sequence::{
    edit_distance, stretched_hamming, EditDistance, Seq, StretchedHamming, StretchedSeq, Stretching,
};
use geoxover_core::tour::{canonical_tours, Perm, ReversalDistance, Rotation, TourEquivalence, TourReversalDistance};

fn kv(l: &[u32], k: u32) -> KaryVector {
    KaryVector::new(l.to_vec(), k).unwrap()
}

fn all_kary(n: usize, k: u32) -> Vec<KaryVector> {
    let mut out = Vec::new();
    let total = (k as usize).pow(n as u32);
    for mut code in 0..total {
        let mut labels = Vec::with_capacity(n);
        for _ in 0..n {
            labels.push((code % k as usize) as u32 + 1);
            code /= k as usize;
        }
        out.push(kv(&labels, k));
    }
    out
}

/// One representative per relabeling class: labels in order of first use.
fn first_use_canonical(v: &KaryVector) -> bool {
    let mut next = 1;
    for &l in v.labels() {
        if l > next {
            return false;
        }
        if l == next {
            next += 1;
        }
    }
    true
}

#[test]
fn grouping_examples_by_brute_force() {
    let d = |a: &KaryVector, b: &KaryVector| quotient_distance_bruteforce(a, b, &GroupingHamming, &Relabeling).unwrap();
    assert_eq!(d(&kv(&[1, 1, 2, 2], 2), &kv(&[2, 2, 1, 1], 2)), 0);
    assert_eq!(d(&kv(&[1, 1, 2], 2), &kv(&[1, 2, 2], 2)), 1);
    assert_eq!(d(&kv(&[1, 1, 2, 2, 3], 3), &kv(&[3, 3, 1, 1, 2], 3)), 0);

    let (x, y, z) = (kv(&[1, 1, 2], 2), kv(&[1, 2, 2], 2), kv(&[1, 1, 1], 2));
    assert_eq!(d(&x, &z), 1);
    assert_eq!(d(&z, &y), 1);
    let qd = QuotientDistance::new(GroupingHamming, Relabeling);
    assert!(!quotient_segment_contains(&x, &y, &z, &qd).unwrap());
    assert!(quotient_segment_contains(&x, &y, &x, &qd).unwrap());
    assert!(quotient_segment_contains(&x, &y, &kv(&[2, 2, 1], 2), &qd).unwrap());

    assert_eq!(
        normalize(
            &kv(&[1, 1, 2, 2], 2),
            &kv(&[2, 2, 1, 1], 2),
            &GroupingHamming,
            &Relabeling
        )
        .unwrap(),
        kv(&[1, 1, 2, 2], 2)
    );
}

#[test]
fn li_distance_equals_bruteforce_exhaustive_small() {
    for k in 1..=4u32 {
        for n in 1..=4 {
            let all = all_kary(n, k);
            for a in &all {
                for b in &all {
                    let brute = quotient_distance_bruteforce(a, b, &GroupingHamming, &Relabeling).unwrap();
                    assert_eq!(li_distance(a, b).unwrap(), brute);
                }
            }
        }
    }
}

#[test]
fn li_distance_equals_bruteforce_sampled_up_to_seven() {
    let mut rng = stream_rng(11, 0);
    for k in 2..=4u32 {
        for n in 5..=7 {
            for _ in 0..200 {
                let a = KaryVector::random(n, k, &mut rng);
                let b = KaryVector::random(n, k, &mut rng);
                let brute = quotient_distance_bruteforce(&a, &b, &GroupingHamming, &Relabeling).unwrap();
                assert_eq!(li_distance(&a, &b).unwrap(), brute);
                let nb = li_normalize(&a, &b).unwrap();
                assert_eq!(hamming(a.labels(), nb.labels()).unwrap(), brute);
                assert!(Relabeling.same_class(&nb, &b));
            }
        }
    }
}

#[test]
fn one_sided_relabeling_suffices() {
    for k in 1..=3u32 {
        for n in 1..=6 {
            let mut rng = stream_rng(u64::from(k) * 100 + n as u64, 0);
            let sigmas = LabelPermutation::all(k);
            for _ in 0..60 {
                let a = KaryVector::random(n, k, &mut rng);
                let b = KaryVector::random(n, k, &mut rng);
                let two_sided = sigmas
                    .iter()
                    .flat_map(|s| sigmas.iter().map(move |t| (s, t)))
                    .map(|(s, t)| hamming(a.relabel(s).unwrap().labels(), b.relabel(t).unwrap().labels()).unwrap())
                    .min()
                    .unwrap();
                let one_sided = sigmas
                    .iter()
                    .map(|s| hamming(a.labels(), b.relabel(s).unwrap().labels()).unwrap())
                    .min()
                    .unwrap();
                assert_eq!(one_sided, two_sided);
            }
        }
    }
}

#[test]
fn li_is_a_metric_on_classes() {
    for k in 2..=3u32 {
        for n in 1..=5 {
            let reps: Vec<_> = all_kary(n, k).into_iter().filter(first_use_canonical).collect();
            let report = check_metric_axioms(&reps, &LiDistance, AxiomCheck::default()).unwrap();
            assert!(report.holds(), "k={k} n={n}: {report:?}");
        }
    }
}

fn all_graphs(n: usize) -> Vec<AdjMatrix> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).map(|c| AdjMatrix::from_upper_code(n, c)).collect()
}

#[test]
fn graph_li_equals_bruteforce() {
    let mut rng = stream_rng(12, 0);
    for n in 1..=6 {
        for _ in 0..40 {
            let a = AdjMatrix::random(n, 0.5, &mut rng);
            let b = AdjMatrix::random(n, 0.5, &mut rng);
            let brute = quotient_distance_bruteforce(&a, &b, &CellHamming, &NodeRelabeling).unwrap();
            assert_eq!(graph_li_distance(&a, &b, GraphLiMode::EXACT).unwrap(), brute);
        }
    }
}

#[test]
fn graph_li_is_relabeling_invariant() {
    let mut rng = stream_rng(13, 0);
    let perms = permutations(6);
    for t in 0..60 {
        let a = AdjMatrix::random(6, 0.4, &mut rng);
        let b = AdjMatrix::random(6, 0.4, &mut rng);
        let p = NodePermutation::new(perms[(t * 37) % perms.len()].clone()).unwrap();
        let q = NodePermutation::new(perms[(t * 101 + 7) % perms.len()].clone()).unwrap();
        let d = graph_li_distance(&a, &b, GraphLiMode::EXACT).unwrap();
        let moved =
            graph_li_distance(&relabel(&a, &p).unwrap(), &relabel(&b, &q).unwrap(), GraphLiMode::EXACT).unwrap();
        assert_eq!(d, moved);
    }
}

#[test]
fn heuristic_gap_distribution() {
    let mut rng = stream_rng(14, 0);
    let mut gaps = [0usize; 8];
    for t in 0..300 {
        let n = 3 + t % 4;
        let a = AdjMatrix::random(n, 0.5, &mut rng);
        let b = AdjMatrix::random(n, 0.5, &mut rng);
        let exact = graph_li_distance(&a, &b, GraphLiMode::EXACT).unwrap();
        let heur = graph_li_distance(&a, &b, GraphLiMode::heuristic(t as u64)).unwrap();
        assert!(heur >= exact);
        gaps[((heur - exact) / 2).min(7) as usize] += 1;
    }
    println!("heuristic gap in edges (0..7+): {gaps:?}");
    // Hill climbing with restarts is exact on most tiny instances.
    assert!(gaps[0] > 200);
}

#[test]
fn graph_li_is_a_metric_on_unlabeled_graphs() {
    for n in 1..=4 {
        let mut reps: Vec<AdjMatrix> = Vec::new();
        for g in all_graphs(n) {
            if !reps
                .iter()
                .any(|r| graph_li_distance(r, &g, GraphLiMode::EXACT).unwrap() == 0)
            {
                reps.push(g);
            }
        }
        let report = check_metric_axioms(&reps, &GraphLiDistance(GraphLiMode::EXACT), AxiomCheck::default()).unwrap();
        assert!(report.holds());
    }
}

#[test]
fn normalized_graph_is_isomorphic_to_second_parent() {
    let mut rng = stream_rng(15, 0);
    for n in 2..=6 {
        for _ in 0..20 {
            let a = AdjMatrix::random(n, 0.5, &mut rng);
            let b = AdjMatrix::random(n, 0.5, &mut rng);
            let nb = normalize(&a, &b, &CellHamming, &NodeRelabeling).unwrap();
            assert!(NodeRelabeling.same_class(&nb, &b));
            assert_eq!(
                cell_hamming(&a, &nb).unwrap(),
                graph_li_distance(&a, &b, GraphLiMode::EXACT).unwrap()
            );
        }
    }
}

fn binary_seqs(max_len: usize) -> Vec<Seq> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for code in 0..1u32 << len {
            out.push(Seq::new((0..len).map(|i| if code >> i & 1 == 1 { b'b' } else { b'a' }).collect()).unwrap());
        }
    }
    out
}

#[test]
fn edit_distance_is_quotient_of_stretched_hamming() {
    let seqs = binary_seqs(3);
    for a in &seqs {
        for b in &seqs {
            let rel = Stretching {
                max_len: a.len() + b.len(),
            };
            let brute = quotient_distance_bruteforce(&a.stretched(), &b.stretched(), &StretchedHamming, &rel).unwrap();
            assert_eq!(brute, edit_distance(a, b), "{a:?} {b:?}");
        }
    }
}

#[test]
fn edit_distance_metric_axioms() {
    let report = check_metric_axioms(&binary_seqs(3), &EditDistance, AxiomCheck::default()).unwrap();
    assert!(report.holds());
}

#[test]
fn stretched_hamming_leftmost_rule() {
    assert_eq!(
        stretched_hamming(&StretchedSeq::parse("abc"), &StretchedSeq::parse("ab")),
        1
    );
}

#[test]
fn reversal_distance_metric_axioms() {
    for n in 1..=5 {
        let pts: Vec<Perm> = permutations(n).into_iter().map(|p| Perm::new(p).unwrap()).collect();
        let report = check_metric_axioms(&pts, &ReversalDistance::default(), AxiomCheck::default()).unwrap();
        assert!(report.holds());
    }
}

#[test]
fn tour_quotient_equals_bruteforce() {
    for n in 1..=5 {
        let td = TourReversalDistance::new(n, TourEquivalence::default(), 8).unwrap();
        let tours = canonical_tours(n);
        for a in &tours {
            for b in &tours {
                let brute =
                    quotient_distance_bruteforce(a, b, &ReversalDistance::default(), &Rotation::default()).unwrap();
                assert_eq!(td.distance(a, b).unwrap(), brute);
            }
        }
        let report = check_metric_axioms(&tours, &td, AxiomCheck::default()).unwrap();
        assert!(report.holds(), "n={n}");
    }
}

#[test]
fn fsm_canonical_preserves_classification() {
    let mut rng = stream_rng(16, 0);
    for n in 1..=4 {
        for _ in 0..50 {
            let m = FsmTable::random(n, 2, 3, &mut rng);
            let c = fsm_canonicalize(&m);
            for s in all_strings(2, 2 * n) {
                assert_eq!(m.classify(&s), c.classify(&s));
            }
        }
    }
}

#[test]
fn fsm_canonical_invariant_under_relabeling_when_reachable() {
    let mut rng = stream_rng(17, 0);
    let mut checked = 0;
    for n in 1..=4 {
        for _ in 0..80 {
            let m = FsmTable::random(n, 2, 2, &mut rng);
            let c = fsm_canonicalize(&m);
            let reachable = (0..n)
                .filter(|&s| {
                    all_strings(2, n)
                        .iter()
                        .any(|w| w.iter().fold(m.start(), |st, &x| m.next(st, x)) == s)
                })
                .count();
            if reachable < n {
                continue;
            }
            checked += 1;
            for perm in permutations(n) {
                assert_eq!(fsm_canonicalize(&m.relabel_states(&perm).unwrap()), c);
            }
        }
    }
    assert!(checked > 50);
}
