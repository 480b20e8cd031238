use std::process::{Command, Output};

use serde_json::Value;

fn qsnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsnn")).args(args).env_remove("QSNN_SEED").output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = qsnn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn report_envelope() {
    let r = report(&["neuron", "exc", "--k", "8", "--l", "17"]);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], serde_json::json!(["neuron", "exc", "--k", "8", "--l", "17"]));
    assert_eq!(r["seed"], 0);
    assert!(r["warnings"].as_array().unwrap().is_empty());
    assert!(r["timing_seconds"].as_f64().unwrap() >= 0.0);
    assert!(close(&r["results"]["fidelity"]["f_avg"], 0.9998, 5e-4));
    assert!(r["results"]["fidelity"]["leakage"].as_f64().unwrap() <= 5e-4);
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsnn"))
        .args(["params", "solve-exc", "--k", "8", "--l", "17"])
        .env("QSNN_SEED", "31")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["seed"], 31);
    let flag = report(&["--seed", "5", "params", "solve-exc", "--k", "8", "--l", "17"]);
    assert_eq!(flag["seed"], 5);
}

#[test]
fn solver_examples() {
    let exc = report(&["params", "solve-exc", "--k", "8", "--l", "17"]);
    let d = &exc["results"]["derived"];
    assert!(close(&d["beta"], 8.0, 1e-12) && close(&d["j"], 15.0, 1e-12));
    assert!(close(&d["drive_frequency"], 16.0, 1e-12));

    let phase = report(&["params", "solve-phase", "--m", "3", "--n", "82", "--exchange", "standard"]);
    let d = &phase["results"]["derived"];
    assert!(close(&d["j"], 164.0, 1e-12) && close(&d["delta"], 6.0, 1e-12));

    let fin = report(&["params", "solve-final", "--l", "5", "--s", "4", "--k-parity", "even"]);
    assert!(close(&fin["results"]["beta"], 4.7016, 1e-4));
    assert!(close(&fin["results"]["j"], -1.7016, 1e-4));

    let triples = report(&["params", "triples", "--max-l", "30"]);
    let list = triples["results"]["triples"].as_array().unwrap();
    for t in [[3, 4, 5], [8, 15, 17], [20, 21, 29]] {
        assert!(list.contains(&serde_json::json!(t)), "{t:?} missing");
    }
}

#[test]
fn validation_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["neuron", "exc", "--k", "2", "--l", "3"],
        &["neuron", "exc", "--m", "3"],
        &["neuron", "phase", "--m", "1", "--n", "82"],
        &["--tol", "-1", "neuron", "exc"],
        &["--jobs", "0", "neuron", "exc"],
        &["network", "run", "--template", "reduced"],
        &["network", "run", "--template", "reduced", "--input", "Phi+,Chi"],
        &["network", "run", "--spec", "/nonexistent/spec.json", "--input", "Phi+,Phi+"],
        &["network", "run", "--template", "reduced", "--truth-table", "--back-action"],
    ];
    for args in cases {
        let out = qsnn(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    let out = qsnn(&["neuron", "exc", "--k", "2", "--l", "3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid parameters"));
}

#[test]
fn trajectories_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj");
    let out_file = dir.path().join("reports/exc.json");
    let r = report(&[
        "--out",
        out_file.to_str().unwrap(),
        "neuron",
        "exc",
        "--traj",
        traj.to_str().unwrap(),
        "--samples",
        "50",
    ]);
    let artifacts: Vec<&str> = r["artifacts"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
    for slug in ["phi_plus", "phi_minus", "psi_plus", "psi_minus"] {
        let path = traj.join(format!("excitation_{slug}.csv"));
        assert!(artifacts.contains(&path.to_str().unwrap()), "{slug} not listed");
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,out_x,out_z,input_fidelity"));
        assert_eq!(lines.count(), 50);
    }
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(written["results"], r["results"]);
    assert!(artifacts.contains(&out_file.to_str().unwrap()));
}

#[test]
fn network_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("reduced.json");
    let out = qsnn(&["--out", spec_path.to_str().unwrap(), "network", "template", "reduced"]);
    assert!(out.status.success());
    let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed["num_qubits"], 7);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&spec_path).unwrap()).unwrap();
    assert_eq!(written, printed);
    let r = report(&[
        "network",
        "run",
        "--spec",
        spec_path.to_str().unwrap(),
        "--input",
        "Psi+&Phi-,Psi+&Phi-",
        "--back-action",
    ]);
    let run = &r["results"]["run"];
    assert!(close(&run["p_up"], 0.5, 0.03));
    assert!(close(&run["kernel"], 0.5, 1e-12));
    for branch in run["back_action"].as_array().unwrap() {
        assert!(branch["branch_overlap"].as_f64().unwrap() >= 0.97);
    }

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"num_qubits\": 7}").unwrap();
    let out = qsnn(&["network", "run", "--spec", broken.to_str().unwrap(), "--input", "Phi+,Phi+"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truth_table_in_parallel() {
    let r = report(&["--jobs", "2", "network", "run", "--template", "full", "--truth-table"]);
    let t = &r["results"]["truth_table"];
    assert_eq!(t["rows"].as_array().unwrap().len(), 16);
    assert!(t["min_diagonal"].as_f64().unwrap() >= 0.95);
    assert!(t["max_off_diagonal"].as_f64().unwrap() <= 0.05);
}

#[test]
fn tuning_is_reported() {
    let r = report(&["neuron", "phase", "--m", "3", "--n", "82", "--tune", "--budget", "300"]);
    let tune = &r["results"]["tune"];
    assert!(tune["final_fidelity"].as_f64().unwrap() >= 0.9955);
    assert!(tune["evaluations"].as_u64().unwrap() <= 300);
}
