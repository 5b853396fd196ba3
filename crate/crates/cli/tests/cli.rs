use std::process::{Command, Output};

fn bdgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdgs"))
        .args(args)
        .env_remove("BDGS_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn predict_emits_cost_json() {
    let o = bdgs(&["predict", "--qubits", "20", "--algo", "bdgs"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algorithm"], "BDGS");
    assert_eq!(
        (v["r"].as_u64(), v["b"].as_u64(), v["k"].as_u64()),
        (Some(20), Some(4), Some(2))
    );
    assert_eq!(v["layers"], 5);
    assert!((v["oracle_calls_bound"].as_f64().unwrap() - 550.9175).abs() < 1e-3);

    let o = bdgs(&["predict", "--qubits", "20", "--algo", "gs,dfgs"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["layers"], 804);
    assert_eq!(v[1]["layers"], 10);
}

#[test]
fn search_prints_verified_outcome() {
    let o = bdgs(&[
        "search", "--qubits", "8", "--algo", "BDGS", "--target", "111", "--shots", "64",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["outcome"]["measured_index"], 111);
    assert_eq!(v["outcome"]["hits"], 64);

    let o = bdgs(&[
        "search", "--qubits", "6", "--algo", "dfgs", "--target", "5", "--mode", "full",
    ]);
    assert!(o.status.success());
}

#[test]
fn run_csv_and_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bdgs"))
        .args([
            "run", "--qubits", "4,6", "--algo", "gs,bdgs", "--trials", "2", "--format", "csv",
        ])
        .env("BDGS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "qubits,algorithm,trial,accuracy_pct,time_s");
    assert_eq!(lines.len(), 1 + 8);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("results.csv")).unwrap(),
        out
    );
    assert!(dir.path().join("runtime_vs_qubits.json").exists());
    assert!(dir.path().join("layers_vs_qubits.json").exists());
}

#[test]
fn exit_codes() {
    // Invalid plan.
    assert_eq!(bdgs(&["run", "--qubits", "1"]).status.code(), Some(2));
    assert_eq!(
        bdgs(&["run", "--trials", "0", "--qubits", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bdgs(&["run", "--qubits", "4", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bdgs(&["search", "--qubits", "4", "--algo", "gs", "--target", "16"])
            .status
            .code(),
        Some(2)
    );
    // A cell that cannot run: 32 blocks in a 16-state register.
    let o = bdgs(&[
        "run",
        "--qubits",
        "4,6",
        "--algo",
        "grk",
        "--block-size",
        "32",
        "--trials",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed"));
    // Clean run.
    assert_eq!(
        bdgs(&["run", "--qubits", "4", "--algo", "bdgs", "--trials", "1"])
            .status
            .code(),
        Some(0)
    );
}
