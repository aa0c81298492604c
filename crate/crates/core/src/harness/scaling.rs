//! Fits measured charged rounds against `c·D·⌈log2 n⌉²`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::experiment::InstanceReport;
use super::HarnessError;
use crate::congest::bit_length;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub diameter: u32,
    pub charged_rounds: u64,
    pub honest_rounds: u64,
    /// `charged / (D·⌈log2 n⌉²)`.
    pub c: f64,
    /// `charged / ⌈log2 n⌉³`, the growth measure for constant-diameter families.
    pub c_polylog: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// Largest `c` over the smallest.
    pub deviation: f64,
    pub polylog_deviation: f64,
    /// `deviation < 2`.
    pub stable: bool,
}

fn spread(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::MIN, f64::max);
    let min = values.fold(f64::MAX, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// One row per distinct size (the first record of each size wins); records
/// without a distributed run are ignored.
pub fn scaling_report(records: &[InstanceReport]) -> Result<ScalingReport, HarnessError> {
    let mut by_size: BTreeMap<usize, &InstanceReport> = BTreeMap::new();
    for r in records {
        if r.charged_rounds.is_some() && r.n > 1 {
            by_size.entry(r.n).or_insert(r);
        }
    }
    if by_size.len() < 4 {
        return Err(HarnessError::InsufficientData { sizes: by_size.len() });
    }
    let rows: Vec<ScalingRow> = by_size
        .values()
        .map(|r| {
            let charged = r.charged_rounds.unwrap_or(0);
            let log_n = f64::from(bit_length(r.n as u128 - 1));
            ScalingRow {
                n: r.n,
                diameter: r.diameter,
                charged_rounds: charged,
                honest_rounds: r.honest_rounds.unwrap_or(0),
                c: charged as f64 / (f64::from(r.diameter.max(1)) * log_n * log_n),
                c_polylog: charged as f64 / log_n.powi(3),
            }
        })
        .collect();
    let deviation = spread(rows.iter().map(|r| r.c));
    let polylog_deviation = spread(rows.iter().map(|r| r.c_polylog));
    Ok(ScalingReport { rows, deviation, polylog_deviation, stable: deviation < 2.0 })
}
