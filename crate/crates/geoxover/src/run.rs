// SPDX-License-Identifier: Apache-2.0

//! Config-driven entry points: single runs, multi-seed benches and the
//! planted-partition instance generator.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use geoxover_core::graph::AdjMatrix;
use geoxover_core::rng::stream_rng;
use rand::Rng;
use rayon::prelude::*;

use crate::config::{ProblemId, RunConfig};
use crate::engine::{evolve, GaParams, RunRecord};
use crate::error::{HarnessError, Result};
use crate::formats::{aggregate_path, load_coordinates, load_corpus, load_edge_list, replica_path};
use crate::output::{write_aggregate, write_run};
use crate::problems::{DegreeSequence, FsmClassifier, OneMax, Partition, SeqMatch, Tsp};

fn params(cfg: &RunConfig) -> GaParams {
    GaParams {
        population: cfg.population,
        generations: cfg.generations,
        tournament: cfg.tournament,
        crossover_rate: cfg.crossover_rate,
        mutation_rate: cfg.mutation_rate,
        seed: cfg.seed,
    }
}

fn instance(cfg: &RunConfig) -> Result<&Path> {
    cfg.instance
        .as_deref()
        .ok_or_else(|| HarnessError::config("instance", "this problem needs an instance file"))
}

/// Loads the instance, builds the problem and evolves it.
pub fn run_ga(cfg: &RunConfig, timing: bool) -> Result<RunRecord> {
    cfg.validate()?;
    let p = params(cfg);
    let kind = cfg.crossover;
    match cfg.problem {
        ProblemId::OneMax { n } => evolve(&OneMax { n }, &p, timing),
        ProblemId::Partition { k } => {
            let graph = load_edge_list(instance(cfg)?)?;
            if (k as usize) > graph.n().max(1) {
                return Err(HarnessError::config("problem", "more groups than nodes"));
            }
            evolve(&Partition::new(graph, k, kind), &p, timing)
        }
        ProblemId::Tsp => evolve(&Tsp::new(load_coordinates(instance(cfg)?)?, kind)?, &p, timing),
        ProblemId::SeqMatch => evolve(&SeqMatch::new(load_corpus(instance(cfg)?)?, kind)?, &p, timing),
        ProblemId::DegreeSequence => {
            let target = load_edge_list(instance(cfg)?)?;
            evolve(&DegreeSequence::new(target, kind)?, &p, timing)
        }
        ProblemId::Fsm { task, states } => evolve(&FsmClassifier::new(task, states, kind), &p, timing),
    }
}

fn write_to(path: &Path, record: &RunRecord) -> Result<()> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    write_run(BufWriter::new(file), record)
}

/// Runs once and writes the CSV to the configured output path, or to
/// stdout when none is set.
pub fn run_to_output(cfg: &RunConfig, timing: bool) -> Result<RunRecord> {
    let record = run_ga(cfg, timing)?;
    match &cfg.output {
        Some(path) => write_to(path, &record)?,
        None => write_run(std::io::stdout().lock(), &record)?,
    }
    Ok(record)
}

/// Runs `replicas` copies with seeds `cfg.seed .. cfg.seed + replicas`
/// concurrently, writes one CSV per replica and the aggregate, and returns
/// the records in seed order.
pub fn bench(cfg: &RunConfig, replicas: usize, timing: bool) -> Result<Vec<RunRecord>> {
    if replicas == 0 {
        return Err(HarnessError::config("seeds", "need at least one replica"));
    }
    let output = cfg
        .output
        .as_deref()
        .ok_or_else(|| HarnessError::config("output", "bench needs an output path"))?;
    let records: Vec<RunRecord> = (0..replicas as u64)
        .into_par_iter()
        .map(|offset| {
            let replica = RunConfig {
                seed: cfg.seed.wrapping_add(offset),
                ..cfg.clone()
            };
            let record = run_ga(&replica, timing)?;
            write_to(&replica_path(output, replica.seed), &record)?;
            Ok(record)
        })
        .collect::<Result<_>>()?;
    let agg = aggregate_path(output);
    let file = File::create(&agg).map_err(|e| HarnessError::io(&agg, e))?;
    write_aggregate(BufWriter::new(file), &records)?;
    Ok(records)
}

/// Planted partition graph: nodes split into `groups` contiguous blocks of
/// near-equal size; pairs inside a block are joined with probability `p_in`,
/// pairs across blocks with `p_out`. Pairs are visited in `(i, j)` order,
/// `i < j`, on stream 0 of `seed`.
pub fn planted_partition(n: usize, groups: usize, p_in: f64, p_out: f64, seed: u64) -> Result<(AdjMatrix, Vec<u32>)> {
    if groups == 0 || groups > n {
        return Err(HarnessError::config("groups", "must be in 1..=n"));
    }
    for (name, p) in [("p_in", p_in), ("p_out", p_out)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(HarnessError::config(name, "must be in [0, 1]"));
        }
    }
    let block: Vec<u32> = (0..n).map(|i| (i * groups / n) as u32 + 1).collect();
    let mut rng = stream_rng(seed, 0);
    let mut g = AdjMatrix::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let p = if block[i] == block[j] { p_in } else { p_out };
            if rng.gen_bool(p) {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok((g, block))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_blocks_are_balanced_and_dense_inside() {
        let (g, block) = planted_partition(32, 4, 0.7, 0.1, 11).unwrap();
        for b in 1..=4 {
            assert_eq!(block.iter().filter(|&&x| x == b).count(), 8);
        }
        let inside = g.edges().iter().filter(|&&(u, v)| block[u] == block[v]).count();
        let across = g.edge_count() - inside;
        // 112 inside pairs at 0.7 and 384 across pairs at 0.1.
        assert!(inside > 60 && across < 70, "{inside} {across}");
        assert_eq!(planted_partition(32, 4, 0.7, 0.1, 11).unwrap().0, g);
    }

    #[test]
    fn bad_planted_parameters() {
        assert!(planted_partition(4, 5, 0.5, 0.5, 0).is_err());
        assert!(planted_partition(4, 2, 1.5, 0.5, 0).is_err());
    }
}
