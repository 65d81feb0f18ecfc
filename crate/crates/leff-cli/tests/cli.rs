//! End-to-end tests of the `leff` binary: documented examples, exit codes,
//! output formats, and cache determinism.

use std::path::Path;
use std::process::{Command, Output};

fn leff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leff"))
        .args(args)
        .env_remove("LEFF_CACHE_DIR")
        .output()
        .expect("spawn leff")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn alpha_example_b_e_squared() {
    let v = json_of(&leff(&["alpha", "--B", "7.389056099"]));
    let alpha = v["alpha"].as_f64().unwrap();
    assert!((alpha - 1.0).abs() < 1e-9, "alpha = {alpha}");
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["leff-schema"], 1);
    assert!(v["version"].as_str().unwrap().starts_with("leff-"));
}

#[test]
fn constants_example_b14() {
    let v = json_of(&leff(&["constants", "--Z", "1", "--N", "1", "--M", "0", "--B", "1e8"]));
    let entries = v["entries"].as_array().unwrap();
    let b14 = entries
        .iter()
        .find(|e| e["name"] == "B_14")
        .expect("B_14 entry");
    assert_eq!(b14["value"].as_f64().unwrap(), 48.0);
    assert_eq!(v["entries_by_name"]["B_14"].as_f64().unwrap(), 48.0);
}

#[test]
fn validation_errors_exit_2() {
    // unknown flag -> clap parse error
    let out = leff(&["alpha", "--nonsense", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // domain error in core (negative field strength)
    let out = leff(&["alpha", "--B=-5"]);
    assert_eq!(out.status.code(), Some(2));
    // window below its B threshold names the threshold and exits 2
    let out = leff(&["window", "--Z", "1", "--N", "1", "--M", "0", "--B", "10", "--theorem", "t3"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("threshold"), "stderr: {msg}");
}

#[test]
fn help_exits_zero() {
    let out = leff(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_csv_format() {
    let out = leff(&["sweep", "--quantity", "alpha", "--B", "1e2,1e4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        vec!["B", "alpha"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    // rows keep the input order of the B list
    assert!(rows[0][0].starts_with("1e2") || rows[0][0].starts_with("1e+2") || rows[0][0] == *"1e2");
    let a0: f64 = rows[0][1].parse().unwrap();
    let a1: f64 = rows[1][1].parse().unwrap();
    assert!(a0 < a1, "alpha increases with B");
}

#[test]
fn compare_csv_columns_and_bound() {
    let out = leff(&["compare", "--model-a", "eff", "--model-b", "delta", "--Z", "1", "--M", "0", "--B", "1e4,1e6"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        vec!["B", "alpha", "d_xi", "resolvent_distance", "bound_T3"]
    );
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let dist: f64 = rec[3].parse().unwrap();
        let bound: f64 = rec[4].parse().unwrap();
        assert!(dist <= bound, "distance {dist} exceeds bound {bound}");
    }
}

#[test]
fn cache_cold_warm_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out1 = dir.path().join("p1.json");
    let out2 = dir.path().join("p2.json");
    let args = |outp: &Path| {
        vec![
            "potentials".to_string(),
            "--Z".into(),
            "1".into(),
            "--N".into(),
            "2".into(),
            "--M".into(),
            "2".into(),
            "--B".into(),
            "1e6".into(),
            "--cache-dir".into(),
            cache.display().to_string(),
            "--output".into(),
            outp.display().to_string(),
        ]
    };
    let run = |outp: &Path| {
        let st = Command::new(env!("CARGO_BIN_EXE_leff"))
            .args(args(outp))
            .status()
            .unwrap();
        assert!(st.success());
    };
    run(&out1);
    assert!(cache.join("cache.json").exists(), "cache file written");
    run(&out2);
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "warm-cache rerun must be bit-identical");
}

#[test]
fn cache_dir_env_variable() {
    let dir = tempfile::tempdir().unwrap();
    let st = Command::new(env!("CARGO_BIN_EXE_leff"))
        .args(["potentials", "--Z", "1", "--N", "2", "--M", "1", "--B", "1e6"])
        .env("LEFF_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(st.status.success());
    assert!(dir.path().join("cache.json").exists());
}

#[test]
fn eigenvector_binary_format() {
    let dir = tempfile::tempdir().unwrap();
    let vecs = dir.path().join("vecs.bin");
    let out = leff(&[
        "solve-delta", "--Z", "1", "--N", "1", "--M", "0", "--B", "1e6",
        "--vectors", vecs.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&vecs).unwrap();
    let nl = bytes.iter().position(|&b| b == b'\n').unwrap();
    let header = std::str::from_utf8(&bytes[..nl]).unwrap();
    let parts: Vec<&str> = header.split_whitespace().collect();
    assert_eq!(parts[0], "LEFF-VEC");
    assert_eq!(parts[1], "v1");
    let points: usize = parts[2].parse().unwrap();
    let count: usize = parts[3].parse().unwrap();
    assert_eq!(bytes.len() - nl - 1, points * count * 8);
    // payload decodes to finite little-endian doubles
    let payload = &bytes[nl + 1..];
    let first = f64::from_le_bytes(payload[0..8].try_into().unwrap());
    assert!(first.is_finite());
}

#[test]
fn solve_delta_exact_ground_state() {
    // Z = 1, B = e^2 so alpha = 1: ground energy -2 alpha^2 Z^2 = -2
    let v = json_of(&leff(&["solve-delta", "--Z", "1", "--N", "1", "--M", "0", "--B", "7.3890560989306495"]));
    let e0 = v["eigenvalues"][0].as_f64().unwrap();
    assert!((e0 + 2.0).abs() < 1e-9, "e0 = {e0}");
}

#[test]
fn output_file_atomic_write() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let out = leff(&["alpha", "--B", "1e4", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["leff-schema"], 1);
    // no leftover temporary file
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path() != path)
        .collect();
    assert!(leftovers.is_empty());
}
