// SPDX-License-Identifier: Apache-2.0

//! Plain-text instance formats.
//!
//! * Edge list: first line `n m`, then `m` lines `u v` with 0-based node ids.
//! * Coordinates: first line `n`, then `n` lines `x y`.
//! * Sequence corpus: one sequence per line; blank lines are skipped.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use geoxover_core::graph::AdjMatrix;
use geoxover_core::sequence::{Seq, GAP};

use crate::error::{HarnessError, Result};

struct Lines<'a> {
    path: &'a Path,
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(path: &'a Path, text: &'a str) -> Self {
        Lines {
            path,
            inner: text.lines().enumerate(),
        }
    }

    fn error(&self, line: usize, reason: impl Into<String>) -> HarnessError {
        HarnessError::Parse {
            path: self.path.to_path_buf(),
            line,
            reason: reason.into(),
        }
    }

    /// Next non-blank line split into exactly `N` fields, with its 1-based
    /// line number.
    fn record<T: FromStr, const N: usize>(&mut self, what: &str) -> Result<([T; N], usize)> {
        let (idx, line) = loop {
            match self.inner.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some(found) => break found,
                None => return Err(self.error(0, format!("unexpected end of file, expected {what}"))),
            }
        };
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != N {
            return Err(self.error(
                lineno,
                format!("expected {N} field(s) for {what}, found {}", fields.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(N);
        for f in fields {
            parsed.push(
                f.parse::<T>()
                    .map_err(|_| self.error(lineno, format!("bad value `{f}` in {what}")))?,
            );
        }
        let arr: [T; N] = parsed.try_into().unwrap_or_else(|_| unreachable!("length checked"));
        Ok((arr, lineno))
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.inner.find(|(_, l)| !l.trim().is_empty()) {
            Some((idx, _)) => Err(self.error(idx + 1, "trailing content")),
            None => Ok(()),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

/// Parses an edge list; the graph must be simple (no loops, no repeated
/// edges in either direction).
pub fn parse_edge_list(path: &Path, text: &str) -> Result<AdjMatrix> {
    let mut lines = Lines::new(path, text);
    let ([n, m], _) = lines.record::<usize, 2>("header `n m`")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let ([u, v], lineno) = lines.record::<usize, 2>("edge `u v`")?;
        if u >= n || v >= n {
            return Err(lines.error(lineno, format!("node id out of range for n = {n}")));
        }
        if u == v {
            return Err(lines.error(lineno, "self-loop"));
        }
        edges.push((u, v));
    }
    lines.expect_end()?;
    AdjMatrix::from_edges(n, &edges).map_err(|e| lines.error(0, e.to_string()))
}

pub fn load_edge_list(path: &Path) -> Result<AdjMatrix> {
    parse_edge_list(path, &read(path)?)
}

pub fn format_edge_list(g: &AdjMatrix) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list(path: &Path, g: &AdjMatrix) -> Result<()> {
    std::fs::write(path, format_edge_list(g)).map_err(|e| HarnessError::io(path, e))
}

/// City coordinates for a Euclidean tour instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates(pub Vec<(f64, f64)>);

impl Coordinates {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Euclidean distance between cities `i` and `j`, rounded to the nearest
    /// integer (halves away from zero).
    pub fn rounded_distance(&self, i: usize, j: usize) -> u64 {
        let (a, b) = (self.0[i], self.0[j]);
        (a.0 - b.0).hypot(a.1 - b.1).round() as u64
    }
}

pub fn parse_coordinates(path: &Path, text: &str) -> Result<Coordinates> {
    let mut lines = Lines::new(path, text);
    let ([n], _) = lines.record::<usize, 1>("city count")?;
    let mut cities = Vec::with_capacity(n);
    for _ in 0..n {
        let ([x, y], lineno) = lines.record::<f64, 2>("coordinates `x y`")?;
        if !x.is_finite() || !y.is_finite() {
            return Err(lines.error(lineno, "coordinates must be finite"));
        }
        cities.push((x, y));
    }
    lines.expect_end()?;
    Ok(Coordinates(cities))
}

pub fn load_coordinates(path: &Path) -> Result<Coordinates> {
    parse_coordinates(path, &read(path)?)
}

/// One sequence per non-blank line, surrounding whitespace trimmed. The gap
/// symbol is reserved and rejected.
pub fn parse_corpus(path: &Path, text: &str) -> Result<Vec<Seq>> {
    let lines = Lines::new(path, text);
    let mut corpus = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.bytes().any(|b| b == GAP || b.is_ascii_whitespace()) {
            return Err(lines.error(idx + 1, "sequences may not contain `-` or inner whitespace"));
        }
        corpus.push(Seq::parse(line).map_err(|e| lines.error(idx + 1, e.to_string()))?);
    }
    if corpus.is_empty() {
        return Err(lines.error(0, "corpus is empty"));
    }
    Ok(corpus)
}

pub fn load_corpus(path: &Path) -> Result<Vec<Seq>> {
    parse_corpus(path, &read(path)?)
}

/// Per-replica output path: `run.csv` becomes `run.seed42.csv`.
pub fn replica_path(output: &Path, seed: u64) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match output.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    output.with_file_name(name)
}

/// Aggregate output path: `run.csv` becomes `run.aggregate.csv`.
pub fn aggregate_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    output.with_file_name(format!("{stem}.aggregate.csv"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list(p(), "4 3\n0 1\n1 2\n\n3 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 0));
        assert_eq!(parse_edge_list(p(), &format_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        let line_of = |text: &str| match parse_edge_list(p(), text).unwrap_err() {
            HarnessError::Parse { line, .. } => line,
            other => panic!("{other}"),
        };
        assert_eq!(line_of("3 1\n0 3\n"), 2);
        assert_eq!(line_of("3 2\n0 1\n2 2\n"), 3);
        assert_eq!(line_of("3 1\n0 x\n"), 2);
        assert_eq!(line_of("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(line_of("3 2\n0 1\n"), 0);
        assert!(parse_edge_list(p(), "3 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn unit_square_coordinates() {
        let c = parse_coordinates(p(), "4\n0 0\n1 0\n1 1\n0 1\n").unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.rounded_distance(0, 2), 1);
        assert_eq!(c.rounded_distance(0, 1), 1);
        assert!(parse_coordinates(p(), "2\n0 0\n").is_err());
        assert!(parse_coordinates(p(), "1\n0 nan\n").is_err());
    }

    #[test]
    fn corpus_skips_blank_lines_and_rejects_gaps() {
        let c = parse_corpus(p(), "acgt\n\n  ggc \n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], Seq::parse("ggc").unwrap());
        assert!(parse_corpus(p(), "ac-t\n").is_err());
        assert!(parse_corpus(p(), "\n\n").is_err());
    }

    #[test]
    fn replica_and_aggregate_names() {
        assert_eq!(
            replica_path(Path::new("out/run.csv"), 3),
            Path::new("out/run.seed3.csv")
        );
        assert_eq!(
            aggregate_path(Path::new("out/run.csv")),
            Path::new("out/run.aggregate.csv")
        );
    }
}
