use super::{HarnessError, Result, ResultTable};
use crate::grover::{predict, predicted_layers, Algorithm};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const RUNTIME_FILE: &str = "runtime_vs_qubits.json";
pub const LAYERS_FILE: &str = "layers_vs_qubits.json";

/// Mean wall time per qubit count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeCurve {
    pub algorithm: Algorithm,
    pub measured: Vec<(u32, f64)>,
}

/// Mean layers and oracle calls per qubit count, with the closed-form
/// predictions at the same points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayersCurve {
    pub algorithm: Algorithm,
    pub measured: Vec<(u32, f64)>,
    pub predicted: Vec<(u32, u64)>,
    pub oracle_calls: Vec<(u32, f64)>,
    pub oracle_calls_bound: Vec<(u32, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSeries {
    pub runtime: Vec<RuntimeCurve>,
    pub layers: Vec<LayersCurve>,
}

impl ScalingSeries {
    /// Writes the runtime and layer series as two JSON files under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<[PathBuf; 2]> {
        std::fs::create_dir_all(dir)?;
        let runtime = dir.join(RUNTIME_FILE);
        let layers = dir.join(LAYERS_FILE);
        std::fs::write(
            &runtime,
            serde_json::to_string_pretty(&self.runtime)? + "\n",
        )?;
        std::fs::write(&layers, serde_json::to_string_pretty(&self.layers)? + "\n")?;
        Ok([runtime, layers])
    }
}

/// Per-algorithm scaling curves from a finished table. Needs at least two
/// distinct qubit counts.
pub fn emit_scaling_series(table: &ResultTable, branching: u64) -> Result<ScalingSeries> {
    let aggregates = table.aggregates();
    let mut qubits: Vec<u32> = aggregates.iter().map(|g| g.qubits).collect();
    qubits.sort_unstable();
    qubits.dedup();
    if qubits.len() < 2 {
        return Err(HarnessError::TooFewQubitCounts(qubits.len()));
    }
    let k = branching.trailing_zeros();

    let mut algos: Vec<Algorithm> = Vec::new();
    for g in &aggregates {
        if !algos.contains(&g.algorithm) {
            algos.push(g.algorithm);
        }
    }

    let mut runtime = Vec::new();
    let mut layers = Vec::new();
    for algorithm in algos {
        let mut groups: Vec<_> = aggregates
            .iter()
            .filter(|g| g.algorithm == algorithm)
            .collect();
        groups.sort_by_key(|g| g.qubits);
        runtime.push(RuntimeCurve {
            algorithm,
            measured: groups.iter().map(|g| (g.qubits, g.time_s)).collect(),
        });
        let mut curve = LayersCurve {
            algorithm,
            measured: groups.iter().map(|g| (g.qubits, g.layers)).collect(),
            predicted: Vec::new(),
            oracle_calls: groups.iter().map(|g| (g.qubits, g.oracle_calls)).collect(),
            oracle_calls_bound: Vec::new(),
        };
        for g in &groups {
            // Cells the predictor cannot model (e.g. GRK with b ≥ N) only
            // lose their predicted point.
            if let Ok(l) = predicted_layers(algorithm, g.qubits, k) {
                curve.predicted.push((g.qubits, l));
            }
            if let Ok(p) = predict(algorithm, g.qubits, branching) {
                curve.oracle_calls_bound.push((g.qubits, p.oracle_calls));
            }
        }
        layers.push(curve);
    }
    Ok(ScalingSeries { runtime, layers })
}
