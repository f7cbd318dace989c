// SPDX-License-Identifier: Apache-2.0

//! Generational GA with tournament selection and elitism of one.
//!
//! Individual `i` of generation `g` draws every random number it needs
//! (initialization, or selection, crossover and mutation) from stream
//! `stream_id(g, i)` of the run seed. Offspring are produced in parallel
//! and collected in index order, so thread scheduling cannot change a run.

use std::time::Instant;

use geoxover_core::rng::{stream_id, stream_rng};
use rand::{Rng, RngCore};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::problems::{Direction, Problem};

/// Individuals (taken from the front of the population) used for the
/// diversity columns.
pub const DIVERSITY_SAMPLE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRow {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
    pub diversity_genotypic: f64,
    pub diversity_quotient: Option<f64>,
    /// Wall-clock milliseconds since the run started; only filled when
    /// timing was requested.
    pub ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub rows: Vec<GenerationRow>,
}

impl RunRecord {
    pub fn final_best(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.best)
    }
}

fn stream(seed: u64, generation: usize, index: usize) -> impl RngCore {
    let g = u32::try_from(generation).expect("generation fits in u32");
    let i = u32::try_from(index).expect("population fits in u32");
    stream_rng(seed, stream_id(g, i))
}

fn best_index(fitness: &[f64], dir: Direction) -> usize {
    let mut best = 0;
    for (i, &f) in fitness.iter().enumerate().skip(1) {
        if dir.better(f, fitness[best]) {
            best = i;
        }
    }
    best
}

fn tournament(fitness: &[f64], size: usize, dir: Direction, rng: &mut dyn RngCore) -> usize {
    let mut winner = rng.gen_range(0..fitness.len());
    for _ in 1..size {
        let c = rng.gen_range(0..fitness.len());
        if dir.better(fitness[c], fitness[winner]) {
            winner = c;
        }
    }
    winner
}

fn mean_pairwise<G>(sample: &[G], d: impl Fn(&G, &G) -> Option<Result<u64>>) -> Result<Option<f64>> {
    let mut total = 0u64;
    let mut pairs = 0u64;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            match d(&sample[i], &sample[j]) {
                Some(v) => total += v?,
                None => return Ok(None),
            }
            pairs += 1;
        }
    }
    Ok(Some(if pairs == 0 { 0.0 } else { total as f64 / pairs as f64 }))
}

fn check_population<P: Problem>(problem: &P, pop: &[P::Genotype], generation: usize) -> Result<()> {
    if let Some(i) = pop.iter().position(|g| !problem.is_valid(g)) {
        return Err(HarnessError::Invariant(format!(
            "individual {i} of generation {generation} violates its representation invariants"
        )));
    }
    Ok(())
}

/// Runs the GA and returns one row per generation `0..=generations`.
pub fn evolve<P: Problem>(problem: &P, params: &GaParams, timing: bool) -> Result<RunRecord> {
    let start = Instant::now();
    let dir = problem.direction();
    let n = params.population;

    let mut pop: Vec<P::Genotype> = (0..n)
        .into_par_iter()
        .map(|i| problem.random(&mut stream(params.seed, 0, i)))
        .collect();
    let mut fitness: Vec<f64> = pop.par_iter().map(|g| problem.fitness(g)).collect();
    let mut rows = Vec::with_capacity(params.generations + 1);

    let mut record = |generation: usize, pop: &[P::Genotype], fitness: &[f64]| -> Result<()> {
        let sample = &pop[..pop.len().min(DIVERSITY_SAMPLE)];
        let genotypic = mean_pairwise(sample, |a, b| Some(problem.genotypic_distance(a, b)))?;
        let quotient = mean_pairwise(sample, |a, b| problem.quotient_distance(a, b))?;
        rows.push(GenerationRow {
            generation,
            best: fitness[best_index(fitness, dir)],
            mean: fitness.iter().sum::<f64>() / fitness.len() as f64,
            diversity_genotypic: genotypic.unwrap_or(0.0),
            diversity_quotient: quotient,
            ms: timing.then(|| start.elapsed().as_millis()),
        });
        Ok(())
    };
    if cfg!(debug_assertions) {
        check_population(problem, &pop, 0)?;
    }
    record(0, &pop, &fitness)?;

    for generation in 1..=params.generations {
        let elite = best_index(&fitness, dir);
        let offspring: Vec<P::Genotype> = (1..n)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream(params.seed, generation, i);
                let a = tournament(&fitness, params.tournament, dir, &mut rng);
                let b = tournament(&fitness, params.tournament, dir, &mut rng);
                let child = if rng.gen_bool(params.crossover_rate) {
                    problem.crossover(&pop[a], &pop[b], &mut rng)?
                } else {
                    pop[a].clone()
                };
                Ok(problem.mutate(&child, params.mutation_rate, &mut rng))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::with_capacity(n);
        next.push(pop[elite].clone());
        next.extend(offspring);
        let mut next_fitness = Vec::with_capacity(n);
        next_fitness.push(fitness[elite]);
        next_fitness.par_extend(next[1..].par_iter().map(|g| problem.fitness(g)));

        if cfg!(debug_assertions) {
            check_population(problem, &next, generation)?;
        }
        pop = next;
        fitness = next_fitness;
        record(generation, &pop, &fitness)?;
    }
    Ok(RunRecord {
        seed: params.seed,
        rows,
    })
}
