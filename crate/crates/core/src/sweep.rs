//! Partition-quality sweeps over several curves and rank counts.
//!
//! Keys and the sorted curve order do not depend on the rank count, so they
//! are computed once per curve and reused for every split.

use std::fmt::Write as _;
use std::time::Instant;

use crate::curve::{CurveEncoder, Level};
use crate::error::Result;
use crate::grid::{DualGraph, GridSpec};
use crate::io::ReportFormat;
use crate::metrics::{evaluate, QualityReport};
use crate::partition::{key_cells, CurveOrder, DomainMap, Partition};

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub method: String,
    pub n_ranks: usize,
    pub report: QualityReport,
    /// Keying and sorting time for the curve plus the time of this split.
    pub partition_seconds: f64,
}

/// Partition `grid` with every curve for every rank count and score each
/// result. Rows come out curve-major in the order given.
pub fn sweep(
    grid: &GridSpec,
    curves: &[&dyn CurveEncoder],
    n_ranks: &[usize],
    level: Level,
    epsilon: f64,
) -> Result<Vec<SweepRow>> {
    sweep_with(grid, curves, n_ranks, level, epsilon, |_, _| {})
}

/// Like [`sweep`], also handing each partition to `inspect`.
pub fn sweep_with(
    grid: &GridSpec,
    curves: &[&dyn CurveEncoder],
    n_ranks: &[usize],
    level: Level,
    epsilon: f64,
    mut inspect: impl FnMut(&SweepRow, &Partition),
) -> Result<Vec<SweepRow>> {
    let map = DomainMap::new(grid, epsilon)?;
    let graph = DualGraph::new(grid);
    let mut rows = Vec::with_capacity(curves.len() * n_ranks.len());
    for curve in curves {
        let start = Instant::now();
        let order = {
            let keys = key_cells(grid, &map, *curve, level)?;
            CurveOrder::new(&keys)?
        };
        let order_seconds = start.elapsed().as_secs_f64();
        for &np in n_ranks {
            let start = Instant::now();
            let partition = order.split(grid.weights(), np, curve.name())?;
            let split_seconds = start.elapsed().as_secs_f64();
            let report = evaluate(&partition, &graph)?;
            let row = SweepRow {
                method: curve.name().to_string(),
                n_ranks: np,
                report,
                partition_seconds: order_seconds + split_seconds,
            };
            inspect(&row, &partition);
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn format_sweep(rows: &[SweepRow], format: ReportFormat) -> String {
    let mut s = String::new();
    match format {
        ReportFormat::Csv => {
            s.push_str("method,np,r_max,r_avg,c_max,edge_cut,imbalance,partition_seconds\n");
            for r in rows {
                let q = &r.report;
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.method, r.n_ranks, q.r_max, q.r_avg, q.c_max, q.edge_cut, q.imbalance, r.partition_seconds
                );
            }
        }
        ReportFormat::Text => {
            let _ = writeln!(
                s,
                "{:<18} {:>7} {:>9} {:>9} {:>6} {:>14} {:>10} {:>10}",
                "method", "np", "r_max(%)", "r_avg(%)", "c_max", "edge_cut", "imbalance", "time(s)"
            );
            for r in rows {
                let q = &r.report;
                let _ = writeln!(
                    s,
                    "{:<18} {:>7} {:>9.2} {:>9.2} {:>6} {:>14} {:>10.6} {:>10.3}",
                    r.method,
                    r.n_ranks,
                    100.0 * q.r_max,
                    100.0 * q.r_avg,
                    q.c_max,
                    q.edge_cut,
                    q.imbalance,
                    r.partition_seconds
                );
            }
        }
    }
    s
}
