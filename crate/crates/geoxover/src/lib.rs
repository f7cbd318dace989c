// SPDX-License-Identifier: Apache-2.0

//! Experiment harness for the crossover operators in `geoxover-core`: run
//! configuration, instance file formats, benchmark problems, a
//! deterministic generational GA, CSV output and the oracle suites behind
//! `geoxover verify`.

pub mod config;
pub mod engine;
mod error;
pub mod formats;
pub mod output;
pub mod problems;
pub mod run;
pub mod verify;

pub use config::{CrossoverKind, ProblemId, Representation, RunConfig};
pub use engine::{evolve, GaParams, GenerationRow, RunRecord};
pub use error::{HarnessError, Result};
pub use run::{bench, planted_partition, run_ga, run_to_output};
