// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geoxover::formats::write_edge_list;
use geoxover::verify::{run_suite, Suite};
use geoxover::{bench, planted_partition, run_to_output, HarnessError, RunConfig};

#[derive(Parser)]
#[command(
    name = "geoxover",
    version,
    about = "Geometric and quotient geometric crossover experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one GA and write its per-generation CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Fill the `ms` column with wall-clock time (output is then no
        /// longer reproducible byte for byte).
        #[arg(long)]
        timing: bool,
    },
    /// Run oracle suites; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Run replicas with seeds `seed..seed+k` and write an aggregate CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seeds: usize,
        #[arg(long)]
        timing: bool,
    },
    /// Write a planted-partition edge list.
    GenPlanted {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        groups: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

fn execute(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Run { config, timing } => {
            let cfg = RunConfig::load(&config)?;
            let record = run_to_output(&cfg, timing)?;
            if cfg.output.is_some() {
                eprintln!("final best {}", record.final_best());
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let outcomes = run_suite(suite)?;
            for o in &outcomes {
                println!("{o}");
            }
            Ok(outcomes.iter().all(|o| o.passed()))
        }
        Command::Bench { config, seeds, timing } => {
            let cfg = RunConfig::load(&config)?;
            let records = bench(&cfg, seeds, timing)?;
            for r in &records {
                eprintln!("seed {} final best {}", r.seed, r.final_best());
            }
            Ok(true)
        }
        Command::GenPlanted {
            nodes,
            groups,
            p_in,
            p_out,
            seed,
            output,
        } => {
            let (graph, _) = planted_partition(nodes, groups, p_in, p_out, seed)?;
            write_edge_list(&output, &graph)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
