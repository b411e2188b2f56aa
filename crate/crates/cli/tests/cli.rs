//! Runs the `vacuumprobe` binary end to end.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_vacuumprobe");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn shift_config_from_flags() {
    let out = run(&[
        "shift",
        "--omega1",
        "2.513e15",
        "--ratio",
        "0.001",
        "--truncation",
        "10000",
    ]);
    let v = json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "shift");
    assert_eq!(v["inputs"]["omega1"], 2.513e15);
    assert_eq!(v["inputs"]["ratio"], 0.001);
    assert_eq!(v["inputs"]["truncation"], 10000);
    let d = &v["results"]["data"];
    let shift = d["delta_r"].as_f64().unwrap();
    assert!((shift / 2.513e15 - d["total"].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn missing_ratio_is_a_usage_error() {
    let out = run(&["shift", "--omega1", "2.513e15"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--ratio"), "{}", stderr(&out));
}

#[test]
fn flag_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{
  "command": "photons",
  "parameters": {
    "ratio": 0.3,
    "truncation": 500
  }
}
"#,
    )
    .unwrap();
    let v = json(&run(&[
        "photons",
        "--config",
        cfg.to_str().unwrap(),
        "--ratio",
        "0.5",
    ]));
    assert_eq!(v["inputs"]["ratio"], 0.5);
    assert_eq!(v["inputs"]["truncation"], 500);
    assert_eq!(v["results"]["data"]["truncation"], 500);
}

#[test]
fn config_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(
        &cfg,
        "{\n  \"parameters\": {\n    \"ratio\": 0.5,\n    \"coupling\": 1\n  }\n}\n",
    )
    .unwrap();
    let out = run(&["photons", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr(&out);
    assert!(
        msg.contains("bad.json:4") && msg.contains("coupling"),
        "{msg}"
    );

    std::fs::write(&cfg, "{\n  \"parameters\": {\n    \"ratio\": 7\n  }\n}\n").unwrap();
    let msg = stderr(&run(&["photons", "--config", cfg.to_str().unwrap()]));
    assert!(msg.contains("bad.json:3") && msg.contains("ratio"), "{msg}");

    std::fs::write(
        &cfg,
        "{\n  \"parameters\": {\n    \"ratio\": 0.5,\n  }\n}\n",
    )
    .unwrap();
    let out = run(&["photons", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    std::fs::write(&cfg, "{\"command\": \"shift\"}").unwrap();
    assert_eq!(
        run(&[
            "photons",
            "--config",
            cfg.to_str().unwrap(),
            "--ratio",
            "0.5"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn midpoint_photons() {
    let v = json(&run(&[
        "photons",
        "--ratio",
        "0.5",
        "--truncation",
        "10000",
    ]));
    let total = v["results"]["data"]["total"].as_f64().unwrap();
    assert!((total - 0.05).abs() < 0.005, "{total}");
}

#[test]
fn empty_sweep_grid_is_rejected() {
    let out = run(&[
        "sweep",
        "--axis",
        "detuning",
        "--grid",
        "-0.1:0.1:0",
        "--coupling",
        "0.01",
        "--time",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty"));
}

#[test]
fn unknown_and_irrelevant_flags_are_rejected() {
    assert_eq!(
        run(&["photons", "--ratio", "0.5", "--coupling", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "dynamics",
            "--method",
            "rabi",
            "--coupling",
            "0.1",
            "--t-grid",
            "0:1:3",
            "--fock-cutoff",
            "5"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn help_documents_units() {
    let out = run(&["shift", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for flag in [
        "--omega1",
        "--subcavity-length",
        "--ratio",
        "--truncation",
        "--transition",
        "--linewidth",
    ] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
    assert!(text.contains("rad/s") && text.contains("THz") && text.contains("nm"));
}

#[test]
fn computation_errors_exit_with_one() {
    // attenuation of exactly 1 passes range parsing but has no finite peak intensity
    let out = run(&[
        "intensity",
        "--omega1",
        "1",
        "--finesse",
        "5",
        "--attenuation",
        "1",
        "--pump-grid",
        "0:1:3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("attenuation"));
}

#[test]
fn three_point_sweep_writes_all_formats() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("rabi");
    let out = run(&[
        "dynamics",
        "--method",
        "rabi",
        "--coupling",
        "0.3",
        "--t-grid",
        "0:2:3",
        "--output",
        stem.to_str().unwrap(),
        "--format",
        "csv,json,svg",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let read = |ext: &str| std::fs::read_to_string(format!("{}.{ext}", stem.display())).unwrap();

    let csv = read("csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "t,p_r");
    // 17 significant digits
    let first = lines[2].split(',').nth(1).unwrap();
    assert_eq!(
        first
            .split('e')
            .next()
            .unwrap()
            .replace(['.', '-'], "")
            .len(),
        17
    );

    let record = vacuumprobe_cli::OutputRecord::from_json(&read("json")).unwrap();
    assert_eq!(
        vacuumprobe_cli::OutputRecord::from_json(&record.to_json()).unwrap(),
        record
    );

    let svg = read("svg");
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<svg").count(), 1);
    assert!(svg.contains(">t</text>") && svg.contains(">p_r</text>"));
}

#[test]
fn output_to_missing_directory_reports_path() {
    let out = run(&[
        "photons",
        "--ratio",
        "0.5",
        "--output",
        "/nonexistent-dir/x",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/nonexistent-dir/x.csv"));
}

#[test]
fn reflectivity_sweep_columns() {
    let v = json(&run(&[
        "reflectivity",
        "--reff-grid",
        "0.05:0.99:20",
        "--mode",
        "1",
    ]));
    let data = &v["results"]["data"];
    assert_eq!(data["axis_values"].as_array().unwrap().len(), 20);
    let names: Vec<&str> = data["observables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"particle_number") && names.contains(&"rate"));
    assert!(Path::new(BIN).exists());
}

#[test]
fn frequency_units_convert_once() {
    let a = json(&run(&[
        "shift",
        "--omega1",
        "400THz",
        "--ratio",
        "0.5",
        "--truncation",
        "100",
    ]));
    let b = json(&run(&[
        "shift",
        "--omega1",
        "2513274122871834.5",
        "--ratio",
        "0.5",
        "--truncation",
        "100",
    ]));
    assert_eq!(a["results"], b["results"]);
    let c = json(&run(&[
        "shift",
        "--subcavity-length",
        "374.7405725nm",
        "--ratio",
        "0.5",
        "--truncation",
        "100",
    ]));
    let w = c["results"]["data"]["omega1"].as_f64().unwrap();
    assert!((w / 2513274122871834.5 - 1.0).abs() < 1e-9);
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(BIN)
        .args(["photons", "--ratio", "0.5", "--truncation", "100"])
        .env("VACUUMPROBE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
