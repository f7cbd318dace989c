// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a flat `key = value` file (TOML syntax) holding
//! exactly the [`RunConfig`] keys. Unknown keys are rejected.
//!
//! ```toml
//! problem = "partition:4"
//! representation = "grouping"
//! crossover = "quotient"
//! population = 60
//! generations = 150
//! tournament = 3
//! crossover_rate = 0.9
//! mutation_rate = 0.02
//! seed = 7
//! instance = "planted.edges"
//! output = "run.csv"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Binary,
    Grouping,
    Graph,
    Sequence,
    Tour,
    Fsm,
}

impl FromStr for Representation {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "binary" => Representation::Binary,
            "grouping" => Representation::Grouping,
            "graph" => Representation::Graph,
            "sequence" => Representation::Sequence,
            "tour" => Representation::Tour,
            "fsm" => Representation::Fsm,
            other => return Err(HarnessError::config("representation", format!("unknown id `{other}`"))),
        })
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Binary => "binary",
            Representation::Grouping => "grouping",
            Representation::Graph => "graph",
            Representation::Sequence => "sequence",
            Representation::Tour => "tour",
            Representation::Fsm => "fsm",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    /// Recombine raw genotypes.
    Genotypic,
    /// Normalize the second parent with the exact normalizer first.
    Quotient,
    /// Normalize with the heuristic normalizer where one exists.
    QuotientHeuristic,
}

impl FromStr for CrossoverKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "genotypic" => CrossoverKind::Genotypic,
            "quotient" => CrossoverKind::Quotient,
            "quotient-heuristic" => CrossoverKind::QuotientHeuristic,
            other => return Err(HarnessError::config("crossover", format!("unknown id `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsmTask {
    /// Parity of the number of ones.
    Parity,
    /// Binary value (most significant bit first) modulo 3.
    Mod3,
}

/// A problem id, optionally carrying one parameter after a colon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemId {
    /// `onemax:<n>`
    OneMax { n: usize },
    /// `partition:<k>`; instance is an edge list.
    Partition { k: u32 },
    /// `tsp`; instance is a coordinate file.
    Tsp,
    /// `seqmatch`; instance is a sequence corpus.
    SeqMatch,
    /// `degseq`; instance is the target graph as an edge list.
    DegreeSequence,
    /// `fsm:parity[:states]` or `fsm:mod3[:states]`.
    Fsm { task: FsmTask, states: usize },
}

impl ProblemId {
    pub fn representation(&self) -> Representation {
        match self {
            ProblemId::OneMax { .. } => Representation::Binary,
            ProblemId::Partition { .. } => Representation::Grouping,
            ProblemId::Tsp => Representation::Tour,
            ProblemId::SeqMatch => Representation::Sequence,
            ProblemId::DegreeSequence => Representation::Graph,
            ProblemId::Fsm { .. } => Representation::Fsm,
        }
    }

    pub fn needs_instance(&self) -> bool {
        !matches!(self, ProblemId::OneMax { .. } | ProblemId::Fsm { .. })
    }
}

fn parse_param<T: FromStr>(value: Option<&str>, what: &str) -> Result<T> {
    let v = value.ok_or_else(|| HarnessError::config("problem", format!("`{what}` needs a parameter")))?;
    v.parse()
        .map_err(|_| HarnessError::config("problem", format!("bad parameter `{v}` for `{what}`")))
}

impl FromStr for ProblemId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let first = parts.next();
        let second = parts.next();
        let id = match name {
            "onemax" => ProblemId::OneMax {
                n: parse_param(first, "onemax")?,
            },
            "partition" => ProblemId::Partition {
                k: parse_param(first, "partition")?,
            },
            "tsp" => ProblemId::Tsp,
            "seqmatch" => ProblemId::SeqMatch,
            "degseq" => ProblemId::DegreeSequence,
            "fsm" => {
                let task = match first {
                    Some("parity") => FsmTask::Parity,
                    Some("mod3") => FsmTask::Mod3,
                    _ => return Err(HarnessError::config("problem", "fsm task must be `parity` or `mod3`")),
                };
                let states = match second {
                    Some(_) => parse_param(second, "fsm")?,
                    None => 4,
                };
                return check_extra(parts.next(), ProblemId::Fsm { task, states });
            }
            other => return Err(HarnessError::config("problem", format!("unknown id `{other}`"))),
        };
        let takes_param = matches!(id, ProblemId::OneMax { .. } | ProblemId::Partition { .. });
        if (!takes_param && first.is_some()) || second.is_some() {
            return Err(HarnessError::config(
                "problem",
                format!("unexpected parameter in `{s}`"),
            ));
        }
        match id {
            ProblemId::OneMax { n: 0 } => Err(HarnessError::config("problem", "onemax length must be >= 1")),
            ProblemId::Partition { k: 0 } => Err(HarnessError::config("problem", "partition k must be >= 1")),
            ProblemId::Fsm { states: 0, .. } => Err(HarnessError::config("problem", "fsm needs >= 1 state")),
            id => Ok(id),
        }
    }
}

fn check_extra(extra: Option<&str>, id: ProblemId) -> Result<ProblemId> {
    match (extra, id) {
        (Some(x), _) => Err(HarnessError::config("problem", format!("unexpected parameter `{x}`"))),
        (None, ProblemId::Fsm { states: 0, .. }) => Err(HarnessError::config("problem", "fsm needs >= 1 state")),
        (None, id) => Ok(id),
    }
}

/// The raw file contents; every key is mandatory except `instance` and
/// `output`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    problem: String,
    representation: String,
    crossover: String,
    population: usize,
    generations: usize,
    tournament: usize,
    crossover_rate: f64,
    mutation_rate: f64,
    seed: u64,
    instance: Option<PathBuf>,
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemId,
    pub representation: Representation,
    pub crossover: CrossoverKind,
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub seed: u64,
    pub instance: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            let field = if msg.contains("unknown field") {
                "<unknown>"
            } else if msg.contains("missing field") {
                "<missing>"
            } else {
                "<syntax>"
            };
            HarnessError::config(field, msg)
        })?;
        let cfg = RunConfig {
            problem: raw.problem.parse()?,
            representation: raw.representation.parse()?,
            crossover: raw.crossover.parse()?,
            population: raw.population,
            generations: raw.generations,
            tournament: raw.tournament,
            crossover_rate: raw.crossover_rate,
            mutation_rate: raw.mutation_rate,
            seed: raw.seed,
            instance: raw.instance,
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative `instance` or `output` path is
    /// resolved against the config file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut cfg = RunConfig::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.instance, &mut cfg.output].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(HarnessError::config("population", "must be at least 2"));
        }
        if self.generations < 1 {
            return Err(HarnessError::config("generations", "must be at least 1"));
        }
        if self.tournament < 1 {
            return Err(HarnessError::config("tournament", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(HarnessError::config("crossover_rate", "must be in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(HarnessError::config("mutation_rate", "must be in [0, 1]"));
        }
        if self.problem.representation() != self.representation {
            return Err(HarnessError::config(
                "representation",
                format!(
                    "problem uses `{}`, not `{}`",
                    self.problem.representation(),
                    self.representation
                ),
            ));
        }
        if self.problem.needs_instance() && self.instance.is_none() {
            return Err(HarnessError::config("instance", "this problem needs an instance file"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
problem = "partition:4"
representation = "grouping"
crossover = "quotient"
population = 60
generations = 150
tournament = 3
crossover_rate = 0.9
mutation_rate = 0.02
seed = 7
instance = "g.edges"
output = "out.csv"
"#;

    #[test]
    fn parses_full_config() {
        let cfg = RunConfig::parse(GOOD).unwrap();
        assert_eq!(cfg.problem, ProblemId::Partition { k: 4 });
        assert_eq!(cfg.crossover, CrossoverKind::Quotient);
        assert_eq!(cfg.population, 60);
        assert_eq!(cfg.instance.as_deref(), Some(Path::new("g.edges")));
    }

    #[test]
    fn rejects_unknown_key() {
        let text = format!("{GOOD}\nelitism = 2\n");
        let err = RunConfig::parse(&text).unwrap_err();
        assert!(err.to_string().contains("elitism"), "{err}");
    }

    fn with(key: &str, value: &str) -> String {
        GOOD.lines()
            .map(|l| {
                if l.starts_with(&format!("{key} ")) {
                    format!("{key} = {value}")
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn field_of(text: &str) -> &'static str {
        match RunConfig::parse(text).unwrap_err() {
            HarnessError::Config { field, .. } => field,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn invariant_violations_name_the_field() {
        assert_eq!(field_of(&with("population", "1")), "population");
        assert_eq!(field_of(&with("generations", "0")), "generations");
        assert_eq!(field_of(&with("crossover_rate", "1.5")), "crossover_rate");
        assert_eq!(field_of(&with("mutation_rate", "-0.1")), "mutation_rate");
        assert_eq!(field_of(&with("tournament", "0")), "tournament");
        assert_eq!(field_of(&with("representation", "\"tour\"")), "representation");
        assert_eq!(field_of(&with("crossover", "\"pmx\"")), "crossover");
        assert_eq!(field_of(&with("problem", "\"knapsack\"")), "problem");
    }

    #[test]
    fn problem_ids() {
        assert_eq!("onemax:30".parse::<ProblemId>().unwrap(), ProblemId::OneMax { n: 30 });
        assert_eq!(
            "fsm:mod3".parse::<ProblemId>().unwrap(),
            ProblemId::Fsm {
                task: FsmTask::Mod3,
                states: 4
            }
        );
        assert_eq!(
            "fsm:parity:3".parse::<ProblemId>().unwrap(),
            ProblemId::Fsm {
                task: FsmTask::Parity,
                states: 3
            }
        );
        assert!("onemax".parse::<ProblemId>().is_err());
        assert!("tsp:5".parse::<ProblemId>().is_err());
        assert!("partition:0".parse::<ProblemId>().is_err());
        assert!("fsm:parity:2:1".parse::<ProblemId>().is_err());
    }

    #[test]
    fn instance_required_for_file_backed_problems() {
        let text: String = GOOD
            .lines()
            .filter(|l| !l.starts_with("instance"))
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(field_of(&text), "instance");
    }
}
