use super::{HarnessError, Result};
use crate::grover::Algorithm;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;

/// One completed cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub qubits: u32,
    pub algorithm: Algorithm,
    pub trial: u32,
    pub target: usize,
    pub measured_index: usize,
    /// Shots that hit the target (the target block for GRK).
    pub hits: u64,
    pub shots: u64,
    /// `hits / shots · 100`.
    pub accuracy_pct: f64,
    pub time_s: f64,
    pub layers: u64,
    pub oracle_calls: u64,
    pub seed: u64,
}

/// A cell whose driver returned an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub qubits: u32,
    pub algorithm: Algorithm,
    pub trial: u32,
    pub message: String,
}

/// Mean over the trials of one `(qubits, algorithm)` group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub qubits: u32,
    pub algorithm: Algorithm,
    pub trials: u32,
    /// `Σ hits · 100 / Σ shots`, which equals the mean trial accuracy when
    /// every trial uses the same shot count.
    pub accuracy_pct: f64,
    pub time_s: f64,
    pub layers: f64,
    pub oracle_calls: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    pub errors: Vec<ErrorRow>,
}

impl ResultTable {
    /// Groups in first-appearance order.
    pub fn aggregates(&self) -> Vec<Aggregate> {
        let mut keys: Vec<(u32, Algorithm)> = Vec::new();
        for row in &self.rows {
            if !keys.contains(&(row.qubits, row.algorithm)) {
                keys.push((row.qubits, row.algorithm));
            }
        }
        keys.into_iter()
            .map(|(qubits, algorithm)| {
                let group: Vec<&ResultRow> = self
                    .rows
                    .iter()
                    .filter(|r| r.qubits == qubits && r.algorithm == algorithm)
                    .collect();
                let n = group.len() as f64;
                let hits: u128 = group.iter().map(|r| r.hits as u128).sum();
                let shots: u128 = group.iter().map(|r| r.shots as u128).sum();
                Aggregate {
                    qubits,
                    algorithm,
                    trials: group.len() as u32,
                    accuracy_pct: (hits * 100) as f64 / shots as f64,
                    time_s: group.iter().map(|r| r.time_s).sum::<f64>() / n,
                    layers: group.iter().map(|r| r.layers as f64).sum::<f64>() / n,
                    oracle_calls: group.iter().map(|r| r.oracle_calls as f64).sum::<f64>() / n,
                }
            })
            .collect()
    }

    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "markdown" | "md" => Ok(Self::Markdown),
            _ => Err(HarnessError::UnknownFormat(s.to_string())),
        }
    }
}

pub const CSV_HEADER: &str = "qubits,algorithm,trial,accuracy_pct,time_s";

#[derive(Serialize)]
struct JsonTable<'a> {
    rows: &'a [ResultRow],
    errors: &'a [ErrorRow],
    aggregates: Vec<Aggregate>,
}

/// Renders the table. CSV holds only the completed rows; JSON carries rows,
/// errors and aggregates; markdown lays trials out per qubit count with one
/// accuracy/time column pair per algorithm and an `Avg.` row per group.
pub fn emit_table(table: &ResultTable, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &table.rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.qubits, r.algorithm, r.trial, r.accuracy_pct, r.time_s
                )
                .expect("writing to a String");
            }
            Ok(out)
        }
        TableFormat::Json => {
            let doc = JsonTable {
                rows: &table.rows,
                errors: &table.errors,
                aggregates: table.aggregates(),
            };
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
        TableFormat::Markdown => Ok(markdown(table)),
    }
}

fn markdown(table: &ResultTable) -> String {
    let mut qubits: Vec<u32> = Vec::new();
    let mut algos: Vec<Algorithm> = Vec::new();
    let mut trials: Vec<u32> = Vec::new();
    for (q, a, t) in table
        .rows
        .iter()
        .map(|r| (r.qubits, r.algorithm, r.trial))
        .chain(
            table
                .errors
                .iter()
                .map(|e| (e.qubits, e.algorithm, e.trial)),
        )
    {
        if !qubits.contains(&q) {
            qubits.push(q);
        }
        if !algos.contains(&a) {
            algos.push(a);
        }
        if !trials.contains(&t) {
            trials.push(t);
        }
    }
    qubits.sort_unstable();
    trials.sort_unstable();

    let mut out = String::from("| Qubits | Trial |");
    for a in &algos {
        write!(out, " {a} Acc. | {a} Time(s) |").expect("writing to a String");
    }
    out.push_str("\n|---:|---:|");
    out.push_str(&"---:|---:|".repeat(algos.len()));
    out.push('\n');

    let aggregates = table.aggregates();
    for &q in &qubits {
        for &t in &trials {
            write!(out, "| {q} | {t} |").expect("writing to a String");
            for &a in &algos {
                match table
                    .rows
                    .iter()
                    .find(|r| r.qubits == q && r.algorithm == a && r.trial == t)
                {
                    Some(r) => write!(
                        out,
                        " {} | {} |",
                        fmt_pct(r.accuracy_pct),
                        fmt_time(r.time_s)
                    ),
                    None if table
                        .errors
                        .iter()
                        .any(|e| e.qubits == q && e.algorithm == a && e.trial == t) =>
                    {
                        write!(out, " error | - |")
                    }
                    None => write!(out, " - | - |"),
                }
                .expect("writing to a String");
            }
            out.push('\n');
        }
        write!(out, "| {q} | Avg. |").expect("writing to a String");
        for &a in &algos {
            match aggregates
                .iter()
                .find(|g| g.qubits == q && g.algorithm == a)
            {
                Some(g) => write!(
                    out,
                    " {} | {} |",
                    fmt_pct(g.accuracy_pct),
                    fmt_time(g.time_s)
                ),
                None => write!(out, " - | - |"),
            }
            .expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

fn fmt_pct(x: f64) -> String {
    if x == x.round() {
        format!("{x:.0}")
    } else {
        format!("{x:.2}")
    }
}

/// Three significant figures; scientific below a millisecond.
fn fmt_time(t: f64) -> String {
    if t != 0.0 && t < 1e-3 {
        format!("{t:.2e}")
    } else {
        format!("{t:.5}")
    }
}
