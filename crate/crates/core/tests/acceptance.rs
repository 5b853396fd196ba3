//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

use bdgs_core::grover::{
    bdgs_level_sum, bdgs_residual_term, bdgs_total_queries, grk_query_count, grover_iteration,
    optimal_iterations, predicted_layers, Algorithm, OracleSpec,
};
use bdgs_core::harness::{run_plan, ExperimentPlan};
use bdgs_core::qsim::{dense_operator_matrix, full_mask, BasisPredicate, DenseOp, StateVector};
use bdgs_core::search::{run_bdgs, run_dfgs, run_search, SearchConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

fn gs_four_qubit_accuracy() -> Check {
    let mut s = StateVector::uniform(4).map_err(|e| e.to_string())?;
    let mut o = OracleSpec::full(4, 6).map_err(|e| e.to_string())?;
    for _ in 0..3 {
        grover_iteration(&mut s, &mut o, 0).map_err(|e| e.to_string())?;
    }
    let expected = (7.0 * 0.25f64.asin()).sin().powi(2);
    let p = s.probability(6);
    ensure!((p - expected).abs() < 1e-6, "P = {p}, expected {expected}");
    ensure!((p - 0.9613).abs() < 1e-4, "P = {p} is not 0.9613");

    let plan = ExperimentPlan {
        qubits: vec![4],
        algorithms: vec![Algorithm::Gs],
        trials: 5,
        shots: 1024,
        base_seed: 2024,
        ..Default::default()
    };
    let table = run_plan(&plan).map_err(|e| e.to_string())?;
    ensure!(
        table.rows.len() == 5 && table.errors.is_empty(),
        "expected 5 clean rows"
    );
    let mean = table.aggregates()[0].accuracy_pct;
    ensure!(
        (94.5..=97.5).contains(&mean),
        "mean accuracy {mean:.2}% outside [94.5, 97.5]"
    );
    Ok(format!(
        "P = {p:.7}, mean accuracy {mean:.2}% over 5 x 1024 shots"
    ))
}

fn gs_iteration_counts() -> Check {
    let got: Vec<u64> = [4u32, 8, 16, 20]
        .iter()
        .map(|&r| optimal_iterations(1u64 << r).unwrap())
        .collect();
    ensure!(got == [3, 12, 201, 804], "got {got:?}");
    let config = SearchConfig::new(Algorithm::Gs, 20, 0xBEEF).map_err(|e| e.to_string())?;
    let calls = run_search(&config).map_err(|e| e.to_string())?.oracle_calls;
    ensure!(calls == 804, "r = 20 run made {calls} oracle calls");
    Ok(format!("{got:?}; measured r = 20 run: {calls} calls"))
}

fn layered_exactness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    for r in [4u32, 8, 16, 20] {
        for _ in 0..64 {
            let target = rng.random_range(0..1usize << r);
            let seed = rng.random();
            for algorithm in [Algorithm::Bdgs, Algorithm::Dfgs] {
                let c = SearchConfig::new(algorithm, r, target)
                    .unwrap()
                    .with_seed(seed);
                let o = run_search(&c).map_err(|e| e.to_string())?;
                ensure!(
                    o.measured_index == target && (o.final_probability - 1.0).abs() < 1e-9,
                    "{algorithm} r = {r} target {target}: got {} with P = {}",
                    o.measured_index,
                    o.final_probability
                );
                ensure!(
                    o.hits == o.shots,
                    "{algorithm} r = {r}: {} of {} shots",
                    o.hits,
                    o.shots
                );
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs, all exact with 100% shot accuracy"))
}

fn layer_counts() -> Check {
    for r in (4u32..=20).step_by(2) {
        let c = |a| SearchConfig::new(a, r, (1usize << r) - 1).unwrap();
        let b = run_bdgs(&c(Algorithm::Bdgs))
            .map_err(|e| e.to_string())?
            .layers;
        let d = run_dfgs(&c(Algorithm::Dfgs))
            .map_err(|e| e.to_string())?
            .layers;
        ensure!(b == r.div_ceil(4) as u64, "BDGS r = {r}: {b} layers");
        ensure!(d == r.div_ceil(2) as u64, "DFGS r = {r}: {d} layers");
        ensure!(
            predicted_layers(Algorithm::Bdgs, r, 2).unwrap() == b,
            "BDGS predictor at r = {r}"
        );
        ensure!(
            predicted_layers(Algorithm::Dfgs, r, 2).unwrap() == d,
            "DFGS predictor at r = {r}"
        );
        if r == 20 {
            ensure!((b, d) == (5, 10), "r = 20: BDGS {b}, DFGS {d}");
        }
    }
    Ok("r = 20: BDGS 5, DFGS 10; ceil(r/2k) and ceil(r/k) for even r in 4..=20".into())
}

fn formula_suite() -> Check {
    let mut cases = 0;
    for k in 1u32..=4 {
        let b = 1u64 << k;
        for r in (2 * k)..=24 {
            let n = 1u64 << r;
            let total = bdgs_total_queries(n, b, r, k).map_err(|e| e.to_string())?;
            let sum = bdgs_level_sum(n, b, r, k).map_err(|e| e.to_string())?
                + bdgs_residual_term(n, b, r, k).map_err(|e| e.to_string())?;
            ensure!(
                (sum - total).abs() < 1e-9,
                "r = {r}, b = {b}: {sum} vs {total}"
            );
            let cap = FRAC_PI_4 / SQRT_2 * (n as f64).sqrt();
            ensure!(total <= cap, "r = {r}, b = {b}: {total} above {cap}");
            let grk = grk_query_count(n, b).map_err(|e| e.to_string())?;
            let direct = FRAC_PI_4 * (n as f64).sqrt() * (1.0 - 1.0 / b as f64).sqrt();
            ensure!(
                (grk - direct).abs() < 1e-12,
                "grk r = {r}, b = {b}: {grk} vs {direct}"
            );
            cases += 1;
        }
    }
    let at20 = bdgs_total_queries(1 << 20, 4, 20, 2).unwrap();
    ensure!((at20 - 550.9).abs() < 0.05, "r = 20 bound {at20}");
    Ok(format!(
        "{cases} (r, b, k) cases; r = 20, b = 4 bound {at20:.4}"
    ))
}

fn random_state(r: u32, rng: &mut ChaCha8Rng) -> StateVector {
    let raw: Vec<Complex64> = (0..1usize << r)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn kernel_correctness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for case in 0..64 {
        let r = rng.random_range(2u32..=6);
        let target = rng.random_range(0..1usize << r);
        let block_mask = rng.random_range(0..1usize << r);
        let iterations = rng.random_range(1..=3);
        let start = random_state(r, &mut rng);
        let mut s = start.clone();
        let mut o = OracleSpec::full(r, target).unwrap();
        let mut ops = Vec::new();
        for _ in 0..iterations {
            grover_iteration(&mut s, &mut o, block_mask).map_err(|e| e.to_string())?;
            ops.push(DenseOp::PhaseFlip(
                BasisPredicate::exact(r, target).unwrap(),
            ));
            ops.push(DenseOp::Reflect { block_mask });
            ops.push(DenseOp::Negate);
        }
        let m = dense_operator_matrix(r, &ops).map_err(|e| e.to_string())?;
        let expected = m.apply(start.amplitudes());
        for (a, e) in s.amplitudes().iter().zip(&expected) {
            worst = worst.max((a - e).norm());
        }
        ensure!(
            worst < 1e-10,
            "case {case} (r = {r}, mask {block_mask:#b}): deviation {worst:e}"
        );
    }

    let mut norm_dev = 0.0f64;
    for _ in 0..128 {
        let r = rng.random_range(2u32..=10);
        let mut s = random_state(r, &mut rng);
        for _ in 0..rng.random_range(1..=8) {
            match rng.random_range(0..3) {
                0 => {
                    let mask = rng.random_range(0..=full_mask(r));
                    let value = rng.random_range(0..=full_mask(r)) & mask;
                    s.phase_flip(&BasisPredicate::new(mask, value).unwrap())
                        .unwrap();
                }
                1 => s
                    .invert_about_mean(rng.random_range(0..=full_mask(r)))
                    .unwrap(),
                _ => s.negate(),
            }
        }
        norm_dev = norm_dev.max((s.norm() - 1.0).abs());
    }
    ensure!(norm_dev < 1e-10, "norm deviation {norm_dev:e}");
    Ok(format!(
        "64 dense cases, max deviation {worst:.1e}; 128 random circuits, max norm drift {norm_dev:.1e}"
    ))
}

fn exhaustive_sweep() -> Check {
    let mut runs = 0;
    for r in [4u32, 6, 8] {
        for target in 0..1usize << r {
            for algorithm in [Algorithm::Bdgs, Algorithm::Dfgs] {
                let c = SearchConfig::new(algorithm, r, target).unwrap();
                let o = run_search(&c).map_err(|e| e.to_string())?;
                let found = o.found.as_ref().ok_or("layered run without found bits")?;
                ensure!(
                    found.is_complete(),
                    "{algorithm} r = {r} target {target}: incomplete"
                );
                // The answer a classical scan with the oracle would give.
                let mut oracle = OracleSpec::full(r, target).unwrap();
                let brute = (0..1usize << r).find(|&i| oracle.query(i));
                ensure!(
                    brute == Some(o.measured_index) && found.value() == target,
                    "{algorithm} r = {r} target {target}: got {}",
                    o.measured_index
                );
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs over every target at r = 4, 6, 8"))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn scaling_shape() -> Check {
    let mut gs = Vec::new();
    let mut bdgs = Vec::new();
    let mut dfgs = Vec::new();
    for r in 8u32..=20 {
        let target = (1usize << r) / 3;
        let o = run_search(&SearchConfig::new(Algorithm::Gs, r, target).unwrap())
            .map_err(|e| e.to_string())?;
        gs.push(((1u64 << r) as f64).ln());
        gs.push((o.oracle_calls as f64).ln());
        let b = run_search(&SearchConfig::new(Algorithm::Bdgs, r, target).unwrap())
            .map_err(|e| e.to_string())?;
        let d = run_search(&SearchConfig::new(Algorithm::Dfgs, r, target).unwrap())
            .map_err(|e| e.to_string())?;
        bdgs.push((r as f64, b.layers as f64));
        dfgs.push((r as f64, d.layers as f64));
    }
    let gs: Vec<(f64, f64)> = gs.chunks(2).map(|c| (c[0], c[1])).collect();
    let slope = least_squares_slope(&gs);
    ensure!((slope - 0.5).abs() <= 0.05, "GS log-log slope {slope}");
    let sb = least_squares_slope(&bdgs);
    let sd = least_squares_slope(&dfgs);
    // ⌈r/4⌉ and ⌈r/2⌉: linear in r with slopes 1/4 and 1/2.
    ensure!((sb - 0.25).abs() < 0.05, "BDGS layers slope {sb}");
    ensure!((sd - 0.5).abs() < 0.05, "DFGS layers slope {sd}");
    for (pts, per) in [(&bdgs, 4.0), (&dfgs, 2.0)] {
        for &(r, l) in pts.iter() {
            ensure!(
                (l - r / per).abs() < 1.0,
                "layers {l} at r = {r} not within one of r/{per}"
            );
        }
    }
    Ok(format!(
        "GS log-log slope {slope:.4}; layer slopes BDGS {sb:.3}, DFGS {sd:.3}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("GS 4-qubit accuracy", gs_four_qubit_accuracy),
        ("GS iteration counts", gs_iteration_counts),
        ("BDGS/DFGS exactness", layered_exactness),
        ("layer counts", layer_counts),
        ("formula suite", formula_suite),
        ("kernel correctness", kernel_correctness),
        ("exhaustive small-instance sweep", exhaustive_sweep),
        ("scaling shape", scaling_shape),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
