// SPDX-License-Identifier: Apache-2.0

use geoxover::config::{CrossoverKind, FsmTask};
use geoxover::formats::Coordinates;
use geoxover::problems::{DegreeSequence, FsmClassifier, Partition, Problem, SeqMatch, Tsp};
use geoxover::{evolve, GaParams};
use geoxover_core::graph::AdjMatrix;
use geoxover_core::rng::stream_rng;
use geoxover_core::sequence::Seq;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = CrossoverKind> {
    prop_oneof![
        Just(CrossoverKind::Genotypic),
        Just(CrossoverKind::Quotient),
        Just(CrossoverKind::QuotientHeuristic)
    ]
}

fn ring(n: usize) -> AdjMatrix {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    AdjMatrix::from_edges(n, &edges).unwrap()
}

/// Offspring of crossover followed by mutation satisfy the representation
/// invariants for any seed and rate.
fn offspring_valid<P: Problem>(p: &P, seed: u64, rate: f64) -> bool {
    let mut rng = stream_rng(seed, 0);
    let (a, b) = (p.random(&mut rng), p.random(&mut rng));
    let child = p.crossover(&a, &b, &mut rng).unwrap();
    p.is_valid(&child) && p.is_valid(&p.mutate(&child, rate, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operators_preserve_invariants(seed in any::<u64>(), rate in 0.0f64..=1.0, k in kind()) {
        prop_assert!(offspring_valid(&Partition::new(ring(7), 3, k), seed, rate));
        let pts = Coordinates((0..7).map(|i| (f64::from(i), f64::from(i * i % 5))).collect());
        prop_assert!(offspring_valid(&Tsp::new(pts, k).unwrap(), seed, rate));
        let corpus = vec![Seq::parse("gattaca").unwrap(), Seq::parse("gcta").unwrap()];
        prop_assert!(offspring_valid(&SeqMatch::new(corpus, k).unwrap(), seed, rate));
        prop_assert!(offspring_valid(&DegreeSequence::new(ring(6), k).unwrap(), seed, rate));
        prop_assert!(offspring_valid(&FsmClassifier::new(FsmTask::Mod3, 3, k), seed, rate));
    }

    #[test]
    fn evolve_is_a_function_of_the_seed(seed in any::<u64>(), k in kind()) {
        let params = GaParams {
            population: 8,
            generations: 5,
            tournament: 2,
            crossover_rate: 0.8,
            mutation_rate: 0.2,
            seed,
        };
        let p = Partition::new(ring(8), 2, k);
        let a = evolve(&p, &params, false).unwrap();
        prop_assert_eq!(&a, &evolve(&p, &params, false).unwrap());
        prop_assert!(a.rows.windows(2).all(|w| w[1].best <= w[0].best));
    }
}
