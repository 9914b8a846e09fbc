use std::io::Write;
use std::process::{Command, Output};

fn basn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basn")).args(args).output().unwrap()
}

fn bmi() -> String {
    format!("{}/data/bmi.csv", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn fit_json_report() {
    let out = basn(&["fit", "--data", &bmi(), "--output-format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "fit");
    assert_eq!(v["results"]["converged"], true);
    let alpha = v["results"]["params"]["alpha"].as_f64().unwrap();
    assert!((alpha - 0.971).abs() < 0.01);
}

#[test]
fn table_and_json_agree() {
    let j = json(&basn(&["fit", "--data", &bmi(), "--output-format", "json"]));
    let t = basn(&["fit", "--data", &bmi(), "--output-format", "table"]);
    let text = String::from_utf8(t.stdout).unwrap();
    let loglik = text
        .lines()
        .find_map(|l| l.strip_prefix("loglik"))
        .map(|s| s.trim().parse::<f64>().unwrap())
        .unwrap();
    assert_eq!(loglik, j["results"]["loglik"].as_f64().unwrap());
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--alpha", "-1.5", "--n", "100", "--seed", "7"];
    let a = basn(&args);
    let b = basn(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("y"));
    assert_eq!(text.lines().count(), 101);
    let c = basn(&["sample", "--alpha", "-1.5", "--n", "100", "--seed", "8"]);
    assert_ne!(text.as_bytes(), c.stdout.as_slice());
}

#[test]
fn tabulate_and_hazard_csv() {
    let out = basn(&["tabulate", "--alpha", "1", "--from", "-2", "--to", "2", "--step", "0.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("z,pdf,cdf"));
    assert_eq!(text.lines().count(), 10);
    let out = basn(&["hazard", "--alpha", "1", "--from", "0", "--to", "3", "--step", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("t,pdf,survival,hazard"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(basn(&["nonsense"]).status.code(), Some(1));
    assert_eq!(basn(&["tabulate", "--alpha", "1", "--from", "2", "--to", "1", "--step", "0.1"]).status.code(), Some(1));
    let out = basn(&["fit", "--data", "/no/such/file.csv", "--output-format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "data");
}

#[test]
fn csv_ingest_errors_and_columns() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    let mut f = std::fs::File::create(&bad).unwrap();
    writeln!(f, "x\n1\n2\nabc\n4").unwrap();
    let out = basn(&["fit", "--data", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let good = dir.path().join("two.csv");
    let mut f = std::fs::File::create(&good).unwrap();
    writeln!(f, "id,v").unwrap();
    for i in 0..40 {
        writeln!(f, "{i},{}", (i as f64 * 0.37).sin() + 0.01 * i as f64).unwrap();
    }
    let out = basn(&["fit", "--data", good.to_str().unwrap(), "--column", "v", "--model", "normal"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["inputs"]["n"], 40);
}

#[test]
fn check_passes() {
    let out = basn(&["check", "--output-format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!v["findings"].as_array().unwrap().is_empty());
}
