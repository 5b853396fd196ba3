//! `bdgs`: run search experiments, single searches, and cost predictions.

use bdgs_core::grover::{predict, predicted_layers, Algorithm};
use bdgs_core::harness::{
    emit_scaling_series, emit_table, run_plan, ExperimentPlan, TableFormat, TargetPolicy,
};
use bdgs_core::search::{
    run_bdgs_with, run_dfgs_with, run_grk_partial, run_standard_grover, verify_outcome,
    LayeredOptions, PassSchedule, RegisterMode, SearchConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CELL_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "bdgs",
    version,
    about = "Grover-family search experiments on a statevector simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a grid of (qubits, algorithm, trial) cells and print the table.
    Run(RunArgs),
    /// Run one search and print its outcome as JSON.
    Search(SearchArgs),
    /// Print closed-form layer and oracle-call predictions as JSON.
    Predict(PredictArgs),
}

#[derive(Args)]
struct Common {
    /// Branching factor b (blocks per layer, a power of two).
    #[arg(long = "block-size", default_value_t = 4)]
    block_size: u64,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed target index; random per trial when omitted.
    #[arg(long)]
    target: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [4u32, 8, 16, 20])]
    qubits: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [Algorithm::Gs, Algorithm::Dfgs, Algorithm::Bdgs])]
    algo: Vec<Algorithm>,
    #[arg(long, default_value_t = 5)]
    trials: u32,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Directory for the table file and scaling series.
    #[arg(long, env = "BDGS_OUT_DIR")]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    qubits: u32,
    #[arg(long)]
    algo: Algorithm,
    #[command(flatten)]
    common: Common,
    /// Working register for DFGS/BDGS segment searches.
    #[arg(long, value_enum, default_value_t = Mode::Compact)]
    mode: Mode,
    /// Pass order for BDGS.
    #[arg(long, value_enum, default_value_t = Schedule::ForwardFirst)]
    schedule: Schedule,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    qubits: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = Algorithm::ALL)]
    algo: Vec<Algorithm>,
    #[arg(long = "block-size", default_value_t = 4)]
    block_size: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

impl Format {
    fn table_format(self) -> TableFormat {
        match self {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
            Format::Markdown => TableFormat::Markdown,
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Markdown => "md",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Compact,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    ForwardFirst,
    BackwardFirst,
    Interleaved,
    Concurrent,
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn run(args: RunArgs) -> ExitCode {
    let plan = ExperimentPlan {
        qubits: args.qubits,
        algorithms: args.algo,
        trials: args.trials,
        shots: args.common.shots,
        base_seed: args.common.seed,
        target_policy: args
            .common
            .target
            .map_or(TargetPolicy::RandomPerTrial, TargetPolicy::Fixed),
        branching: args.common.block_size,
        jobs: args.jobs,
    };
    let table = match run_plan(&plan) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    let rendered = match emit_table(&table, args.format.table_format()) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    print!("{rendered}");

    if let Some(dir) = &args.out {
        let written = std::fs::create_dir_all(dir).and_then(|_| {
            std::fs::write(
                dir.join(format!("results.{}", args.format.extension())),
                &rendered,
            )
        });
        if let Err(e) = written {
            eprintln!("error: writing {}: {e}", dir.display());
            return ExitCode::FAILURE;
        }
        match emit_scaling_series(&table, plan.branching) {
            Ok(series) => {
                if let Err(e) = series.write_to(dir) {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            Err(e) => eprintln!("note: scaling series skipped: {e}"),
        }
    }

    for err in &table.errors {
        eprintln!(
            "cell {} qubits / {} / trial {} failed: {}",
            err.qubits, err.algorithm, err.trial, err.message
        );
    }
    if table.has_errors() {
        ExitCode::from(EXIT_CELL_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn search(args: SearchArgs) -> ExitCode {
    let c = &args.common;
    let target = c.target.unwrap_or_else(|| {
        (bdgs_core::seed::derive(&[c.seed, bdgs_core::seed::TARGET]) as usize)
            & ((1usize << args.qubits.min(24)) - 1)
    });
    let config = match SearchConfig::new(args.algo, args.qubits, target)
        .and_then(|cfg| cfg.with_branching(c.block_size))
        .and_then(|cfg| cfg.with_shots(c.shots))
    {
        Ok(cfg) => cfg.with_seed(c.seed),
        Err(e) => return invalid(e),
    };
    let options = LayeredOptions {
        mode: match args.mode {
            Mode::Compact => RegisterMode::Compact,
            Mode::Full => RegisterMode::Full,
        },
        schedule: match args.schedule {
            Schedule::ForwardFirst => PassSchedule::ForwardFirst,
            Schedule::BackwardFirst => PassSchedule::BackwardFirst,
            Schedule::Interleaved => PassSchedule::Interleaved,
            Schedule::Concurrent => PassSchedule::Concurrent,
        },
    };
    let result = match config.algorithm {
        Algorithm::Gs => run_standard_grover(&config),
        Algorithm::Grk => run_grk_partial(&config).map(|g| g.outcome),
        Algorithm::Dfgs => run_dfgs_with(&config, &options),
        Algorithm::Bdgs => run_bdgs_with(&config, &options),
    };
    match result {
        Ok(outcome) => {
            let doc = json!({ "verified": verify_outcome(&outcome, &config), "outcome": outcome });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("outcome serialises")
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CELL_FAILED)
        }
    }
}

fn predict_cmd(args: PredictArgs) -> ExitCode {
    let b = args.block_size;
    let k = b.trailing_zeros();
    let mut out = Vec::new();
    for &r in &args.qubits {
        for &algorithm in &args.algo {
            let cost = predict(algorithm, r, b);
            let layers = predicted_layers(algorithm, r, k);
            match (cost, layers) {
                (Ok(cost), Ok(layers)) => out.push(json!({
                    "algorithm": algorithm,
                    "r": r,
                    "b": b,
                    "k": k,
                    "layers": layers,
                    "oracle_calls_bound": cost.oracle_calls,
                })),
                (Err(e), _) | (_, Err(e)) => {
                    return invalid(format!("{algorithm} at r = {r}: {e}"))
                }
            }
        }
    }
    let doc = if out.len() == 1 {
        out.remove(0)
    } else {
        serde_json::Value::Array(out)
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("json value serialises")
    );
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Search(args) => search(args),
        Command::Predict(args) => predict_cmd(args),
    }
}
