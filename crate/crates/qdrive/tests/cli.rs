use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qdrive::io::{read_series_csv, read_series_json, SERIES_HEADER};

fn qdrive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdrive"))
        .args(args)
        .env_remove("QDRIVE_STEPS_DEFAULT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(o: &Output) -> usize {
    stdout(o).lines().count() - 1
}

#[test]
fn verify_exit_codes() {
    let ok = qdrive(&["verify", "--scenario", "rabi", "--steps", "5000"]);
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(report["max_entry_error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(report["passed"], true);

    // drift past the runtime tolerances aborts the propagation, still exit 1
    let drift = qdrive(&["verify", "--scenario", "rabi", "--steps", "3"]);
    assert_eq!(drift.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&drift.stderr).contains("drift"));

    let bad = qdrive(&["verify", "--scenario", "rabi", "--steps", "4"]);
    assert_eq!(bad.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(report["passed"], false);

    let pulse = qdrive(&["verify", "--scenario", "pulse", "--f0", "4.5", "--steps", "8192"]);
    assert_eq!(pulse.status.code(), Some(0));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["pulse", "--f0", "-1"][..],
        &["pulse", "--mode", "numeric", "--steps", "7"],
        &["rabi", "--steps", "0"],
        &["verify"],
        &["sweep", "--scenario", "rabi", "--param", "f0", "--values", "1"],
        &["sweep", "--scenario", "pulse", "--param", "f0", "--values", "1,x"],
        &["integrate"],
        &["integrate", "--drive-file", "/nonexistent/drive.csv"],
        &["rabi", "--coupling-re", "0"],
        &["no-such-command"],
    ] {
        let o = qdrive(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn csv_schema_and_round_trip() {
    let o = qdrive(&["pulse", "--f0", "0.1", "--steps", "2000"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), SERIES_HEADER.join(","));
    assert!(!text.contains('\r'));
    let rows = read_series_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 2001);
    let peak = rows.iter().map(|r| r.c_l1).fold(0.0, f64::max);
    assert!((peak - 0.19802).abs() < 1e-5, "{peak}");

    let mut again = Vec::new();
    qdrive::io::write_series_csv(&mut again, &rows).unwrap();
    assert_eq!(again, o.stdout);
}

#[test]
fn json_output_has_same_fields() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = qdrive(&["rabi", "--steps", "10", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = read_series_json(fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].rho00_re, 1.0);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig2.json");
    fs::write(
        &cfg,
        r#"{"scenario":"pulse","params":{"e0":1.0,"f0":4.5,"n_period":1},"grid":{"steps":100},"mode":"analytic"}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let o = qdrive(&["pulse", "--config", c, "--f0", "0.1", "--steps", "7"]);
    assert!(o.status.success());
    let rows = read_series_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().any(|r| r.c_l1 > 0.99));

    assert_eq!(qdrive(&["rabi", "--config", c]).status.code(), Some(2));
    assert_eq!(qdrive(&["verify", "--config", c]).status.code(), Some(1));

    fs::write(&cfg, r#"{"scenario":"pulse","params":{"e0":1,"f0":1,"n_period":1},"grd":{}}"#).unwrap();
    let o = qdrive(&["pulse", "--config", c]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grd"));
}

#[test]
fn steps_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qdrive"));
        cmd.arg("rabi").env_remove("QDRIVE_STEPS_DEFAULT");
        if let Some(v) = env {
            cmd.env("QDRIVE_STEPS_DEFAULT", v);
        }
        if let Some(v) = flag {
            cmd.args(["--steps", v]);
        }
        cmd.output().unwrap()
    };
    assert_eq!(data_lines(&run(None, None)), 4097);
    assert_eq!(data_lines(&run(Some("40"), None)), 41);
    assert_eq!(data_lines(&run(Some("40"), Some("12"))), 13);
    assert_eq!(run(Some("zero"), None).status.code(), Some(2));
    assert!(run(Some("zero"), Some("5")).status.success());
}

#[test]
fn sweep_table() {
    let o = qdrive(&["sweep", "--scenario", "pulse", "--param", "f0", "--values", "0.1,0.5,1,2,4.5", "--steps", "512"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["value", "max_c_l1", "min_purity", "max_purity", "period_return_error", "error"]
    );
    let got: Vec<f64> = rdr.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    for (g, e) in got.iter().zip([0.2 / 1.01, 0.8, 1.0, 1.0, 1.0]) {
        assert!((g - e).abs() < 1e-6, "{g} vs {e}");
    }

    let empty = qdrive(&["sweep", "--scenario", "pulse", "--param", "f0", "--values", ""]);
    assert!(empty.status.success());
    assert_eq!(data_lines(&empty), 0);

    let degenerate = qdrive(&["sweep", "--scenario", "rabi", "--param", "coupling-magnitude", "--values", "0,0.5"]);
    assert!(degenerate.status.success());
    let text = stdout(&degenerate);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[1].contains("degenerate drive"));
    assert!(lines[2].ends_with(','));
}

fn write_drive(path: &Path) {
    // constant σx/2 drive
    let mut s = String::from("t,h00_re,h00_im,h01_re,h01_im,h10_re,h10_im,h11_re,h11_im\n");
    for k in 0..=10 {
        s.push_str(&format!("{},0,0,0.5,0,0.5,0,0,0\n", k as f64 * 0.5));
    }
    fs::write(path, s).unwrap();
}

#[test]
fn integrate_and_coherence() {
    let dir = tempfile::tempdir().unwrap();
    let drive = dir.path().join("drive.csv");
    write_drive(&drive);
    let series = dir.path().join("series.csv");
    let o = qdrive(&[
        "integrate",
        "--drive-file",
        drive.to_str().unwrap(),
        "--steps",
        "2000",
        "--output",
        series.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_series_csv(fs::File::open(&series).unwrap()).unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last.t, 5.0);
    // exp(-i σx t/2) from |0⟩: ρ00 = cos²(t/2)
    assert!((last.rho00_re - (2.5f64).cos().powi(2)).abs() < 1e-10);

    let o = qdrive(&["coherence", "--input", series.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(o.stdout, fs::read(&series).unwrap());

    let o = qdrive(&["integrate", "--drive-file", drive.to_str().unwrap(), "--mode", "verify"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qdrive(&["integrate", "--drive-file", drive.to_str().unwrap(), "--t-end", "6"]);
    assert_eq!(o.status.code(), Some(2));
}
