//! Experiment grid runner: executes `(qubits, algorithm, trial)` cells,
//! collects accuracy and timing rows, and renders tables and scaling series.

mod plan;
mod series;
mod table;

pub use plan::{Cell, ExperimentPlan, TargetPolicy};
pub use series::{
    emit_scaling_series, LayersCurve, RuntimeCurve, ScalingSeries, LAYERS_FILE, RUNTIME_FILE,
};
pub use table::{emit_table, Aggregate, ErrorRow, ResultRow, ResultTable, TableFormat, CSV_HEADER};

use crate::search::{run_search, SearchConfig, SearchOutcome};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("unknown output format {0:?} (expected csv, json or markdown)")]
    UnknownFormat(String),
    #[error("scaling series need at least two qubit counts, got {0}")]
    TooFewQubitCounts(usize),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Runs one cell. Driver failures come back as an error row.
pub fn run_cell(plan: &ExperimentPlan, cell: Cell) -> std::result::Result<ResultRow, ErrorRow> {
    let seed = cell.seed(plan.base_seed);
    let target = cell.target(plan.target_policy, seed);
    let outcome = SearchConfig::new(cell.algorithm, cell.num_qubits, target)
        .and_then(|c| c.with_branching(plan.branching))
        .and_then(|c| c.with_shots(plan.shots))
        .and_then(|c| run_search(&c.with_seed(seed)));
    match outcome {
        Ok(o) => Ok(row(cell, &o)),
        Err(e) => Err(ErrorRow {
            qubits: cell.num_qubits,
            algorithm: cell.algorithm,
            trial: cell.trial,
            message: e.to_string(),
        }),
    }
}

fn row(cell: Cell, o: &SearchOutcome) -> ResultRow {
    ResultRow {
        qubits: cell.num_qubits,
        algorithm: cell.algorithm,
        trial: cell.trial,
        target: o.target,
        measured_index: o.measured_index,
        hits: o.hits,
        shots: o.shots,
        accuracy_pct: (o.hits as f64 * 100.0) / o.shots as f64,
        time_s: o.wall_time,
        layers: o.layers,
        oracle_calls: o.oracle_calls,
        seed: o.trial_seed,
    }
}

/// Runs every cell of `plan` on up to `plan.jobs` threads. Rows come back in
/// cell order regardless of scheduling; failed cells become error rows.
pub fn run_plan(plan: &ExperimentPlan) -> Result<ResultTable> {
    plan.validate()?;
    let cells = plan.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let results: Vec<_> = pool.install(|| cells.par_iter().map(|&c| run_cell(plan, c)).collect());
    let mut table = ResultTable::default();
    for r in results {
        match r {
            Ok(row) => table.rows.push(row),
            Err(err) => table.errors.push(err),
        }
    }
    Ok(table)
}
