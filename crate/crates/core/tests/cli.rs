use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_microinject");

const CONTACT: &str = r#"{
  "frame": { "alpha": 0.5235987755982988, "dx": 0.5, "dy": 0.5, "fx": 2.0, "fy": 4.0 },
  "masses": { "mx": 1.0, "my": 1.0, "mp": 1.0 },
  "impedance": { "m": 1.0, "b": 20.0, "k": 100.0 },
  "trajectory": { "kind": "quintic", "start": [0.0, 0.0], "end": [2.0, 0.5], "duration": 2.0 },
  "membrane": { "stiffness": 40.0, "damping": 2.0, "contact_x": 1.0 },
  "fed": [0.5, -0.25],
  "run": { "t_end": 4.0, "dt": 0.001, "variants": ["StageConsistent", "McPaper"] },
  "seed": 7
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn verify_frames_passes() {
    let o = run(&["verify", "--suite", "frames", "--trials", "500"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.lines().any(|l| l.starts_with("[PASS] frames/")));
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn verify_discrepancy_passes() {
    let o = run(&[
        "verify",
        "--suite",
        "discrepancy",
        "--trials",
        "200",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn verify_rejects_unknown_suite_and_zero_trials() {
    assert_eq!(code(&run(&["verify", "--suite", "bogus"])), 2);
    assert_eq!(
        code(&run(&["verify", "--suite", "frames", "--trials", "0"])),
        2
    );
}

#[test]
fn simulate_writes_traces_and_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONTACT);
    let out = dir.path().join("out");
    let o = run(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--svg",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let trace = fs::read_to_string(out.join("trace_StageConsistent.csv")).unwrap();
    assert_eq!(
        trace.lines().next().unwrap(),
        "t,x,y,xdot,ydot,xd,yd,fex,fey,taux,tauy,taux_oracle,tauy_oracle"
    );
    assert_eq!(trace.lines().count(), 4002);
    assert!(fs::read_to_string(out.join("plot_McPaper.svg"))
        .unwrap()
        .contains("<svg"));

    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("metrics.json")).unwrap()).unwrap();
    assert_eq!(metrics["seed"], 7);
    let variants = metrics["variants"].as_array().unwrap();
    let mc = variants.iter().find(|v| v["variant"] == "McPaper").unwrap();
    assert!(mc["metrics"]["torque_divergence_rms"].as_f64().unwrap() > 0.0);
    assert!(mc["vs_base"]["torque_divergence_rms"].as_f64().unwrap() > 0.0);

    let again = dir.path().join("again");
    let o = run(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    for name in [
        "trace_StageConsistent.csv",
        "trace_McPaper.csv",
        "metrics.json",
    ] {
        assert_eq!(
            fs::read(out.join(name)).unwrap(),
            fs::read(again.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn simulate_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();

    let cfg = write_config(
        dir.path(),
        &CONTACT.replace(r#"["StageConsistent", "McPaper"]"#, "[]"),
    );
    let o = run(&["simulate", "--config", &cfg, "--out", out]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("no variants selected"));

    let cfg = write_config(dir.path(), &CONTACT.replace(r#""mx": 1.0"#, r#""mx": -1"#));
    let o = run(&["simulate", "--config", &cfg, "--out", out]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("masses.mx must be > 0"));

    let o = run(&[
        "simulate",
        "--config",
        "/nonexistent/scenario.json",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 2);
}

fn max_abs_error(csv: &str) -> f64 {
    csv.lines()
        .skip(1)
        .flat_map(|l| {
            l.split(',')
                .skip(5)
                .map(|v| v.parse::<f64>().unwrap().abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn free_response_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fr.csv");
    let o = run(&["free-response", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(&path).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "t,x_closed,y_closed,x_rk4,y_rk4,err_x,err_y"
    );
    assert_eq!(csv.lines().count(), 10_002);
    assert!(max_abs_error(&csv) <= 1e-6);
}

#[test]
fn free_response_at_rest_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rest.csv");
    let o = run(&[
        "free-response",
        "--x0",
        "-0.3",
        "--y0",
        "2",
        "--xd0",
        "0",
        "--yd0",
        "0",
        "--t-end",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(max_abs_error(&fs::read_to_string(&path).unwrap()), 0.0);
}

#[test]
fn free_response_rejects_bad_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let o = run(&[
        "free-response",
        "--dt",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "free-response",
        "--mx",
        "-1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}
