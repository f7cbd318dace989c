// SPDX-License-Identifier: Apache-2.0

//! CSV writers for run records and bench aggregates.

use std::io::Write;

use crate::engine::RunRecord;
use crate::error::{HarnessError, Result};

pub const RUN_HEADER: [&str; 6] = [
    "generation",
    "best",
    "mean",
    "diversity_genotypic",
    "diversity_quotient",
    "ms",
];

pub const AGGREGATE_HEADER: [&str; 4] = ["generation", "median_best", "min_best", "max_best"];

/// Writes one row per generation. Empty cells mean "not computed":
/// `diversity_quotient` when no tractable quotient distance exists, `ms`
/// when timing was off.
pub fn write_run<W: Write>(out: W, record: &RunRecord) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for r in &record.rows {
        w.write_record([
            r.generation.to_string(),
            r.best.to_string(),
            r.mean.to_string(),
            r.diversity_genotypic.to_string(),
            r.diversity_quotient.map(|v| v.to_string()).unwrap_or_default(),
            r.ms.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::io("<csv>", e))?;
    Ok(())
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Per-generation median, minimum and maximum of the best fitness across
/// replicas. All records must cover the same generations.
pub fn write_aggregate<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let gens = records.first().map_or(0, |r| r.rows.len());
    if records.iter().any(|r| r.rows.len() != gens) {
        return Err(HarnessError::Invariant(
            "replicas cover different generation counts".into(),
        ));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AGGREGATE_HEADER)?;
    for g in 0..gens {
        let mut bests: Vec<f64> = records.iter().map(|r| r.rows[g].best).collect();
        let med = median(&mut bests);
        w.write_record([
            records[0].rows[g].generation.to_string(),
            med.to_string(),
            bests[0].to_string(),
            bests[bests.len() - 1].to_string(),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::GenerationRow;

    fn record(seed: u64, bests: &[f64]) -> RunRecord {
        RunRecord {
            seed,
            rows: bests
                .iter()
                .enumerate()
                .map(|(g, &b)| GenerationRow {
                    generation: g,
                    best: b,
                    mean: b + 0.5,
                    diversity_genotypic: 2.0,
                    diversity_quotient: None,
                    ms: None,
                })
                .collect(),
        }
    }

    #[test]
    fn run_csv_layout() {
        let mut buf = Vec::new();
        write_run(&mut buf, &record(1, &[3.0, 2.5])).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "generation,best,mean,diversity_genotypic,diversity_quotient,ms\n0,3,3.5,2,,\n1,2.5,3,2,,\n"
        );
    }

    #[test]
    fn aggregate_takes_median_min_max() {
        let recs = [
            record(1, &[4.0]),
            record(2, &[1.0]),
            record(3, &[2.0]),
            record(4, &[8.0]),
        ];
        let mut buf = Vec::new();
        write_aggregate(&mut buf, &recs).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "generation,median_best,min_best,max_best\n0,3,1,8\n"
        );
    }

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [3.0, 1.0]), 2.0);
    }
}
