use std::process::{Command, Output};

fn tensorwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorwalk"))
        .args(args)
        .env_remove("TENSORWALK_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Second CSV column of every data row.
fn exact_column(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect()
}

#[test]
fn sn_separation_curves() {
    let out = tensorwalk(&["sn-sep", "--n", "3", "--rmax", "3"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("r,s_exact,s_float,route\n"));
    assert_eq!(exact_column(&csv), ["1/1", "1/1", "1/3", "1/9"]);

    let csv = stdout(&tensorwalk(&["sn-sep", "--n", "4", "--rmax", "3"]));
    assert_eq!(exact_column(&csv).last().unwrap(), "5/8");

    let csv = stdout(&tensorwalk(&["sn-sep", "--n", "6", "--rmax", "0"]));
    assert_eq!(exact_column(&csv), ["1/1"]);
}

#[test]
fn closed_form_only_above_the_size_guard() {
    let out = tensorwalk(&["sn-sep", "--n", "64", "--rmax", "70"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 72);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",closed")));
    assert_eq!(tensorwalk(&["sn-sep", "--n", "513", "--rmax", "1"]).status.code(), Some(2));
}

#[test]
fn size_guard_override_warns() {
    let out = tensorwalk(&["sn-tv", "--n", "11", "--rmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_tensorwalk"))
        .args(["sn-tv", "--n", "11", "--rmax", "1"])
        .env("TENSORWALK_MAX_N", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("TENSORWALK_MAX_N"));
    assert!(stdout(&out).starts_with("r,tv_exact,tv_float,route\n"));
}

#[test]
fn gl_separation_curve() {
    let out = tensorwalk(&["gl-sep", "--n", "2", "--q", "2", "--rmax", "3"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("r,s_exact,s_float,route,q\n"));
    assert_eq!(exact_column(&csv), ["1/1", "1/1", "5/8", "11/32"]);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",2")));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&tensorwalk(&["gl-sep", "--n", "2", "--q", "3", "--rmax", "2", "--format", "json"])))
            .unwrap();
    assert_eq!(json["q"], 3);
    assert_eq!(json["records"][2]["exact"], "11/27");
}

#[test]
fn crosscheck_tables_pass() {
    let out = tensorwalk(&["crosscheck", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    assert!(csv.lines().count() > 8);
    assert!(csv.lines().skip(1).all(|l| l.contains(",pass,")), "{csv}");

    let out = tensorwalk(&["crosscheck", "--n", "3", "--q", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rows.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn occupancy_records_and_reruns() {
    let args = ["occupancy", "--n", "4", "--rmax", "6", "--samples", "20000", "--seed", "11", "--streams", "3", "--format", "json"];
    let first = tensorwalk(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, tensorwalk(&args).stdout);

    let records: Vec<serde_json::Value> = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(records.len(), 5);
    let mut keys: Vec<&str> = records[2].as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["a", "estimate", "exact", "n", "r", "samples", "seed", "stderr"]);
    let total: f64 = records.iter().map(|r| r["estimate"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);

    let other = tensorwalk(&["occupancy", "--n", "4", "--rmax", "6", "--samples", "20000", "--seed", "12", "--streams", "3"]);
    assert_ne!(other.stdout, tensorwalk(&["occupancy", "--n", "4", "--rmax", "6", "--samples", "20000", "--seed", "11", "--streams", "3"]).stdout);
}

#[test]
fn span_records_include_q() {
    let out = tensorwalk(&["occupancy", "--n", "3", "--rmax", "3", "--q", "2", "--samples", "5000", "--format", "json"]);
    assert!(out.status.success());
    let records: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records[3]["q"], 2);
    assert_eq!(records[3]["exact"], "21/64");
    assert_eq!(
        tensorwalk(&["occupancy", "--n", "3", "--rmax", "3", "--q", "4", "--samples", "10"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let args = ["sn-sep", "--n", "5", "--rmax", "12"];
    let mut with_out: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_out.extend(["--out", path_str]);
    let out = tensorwalk(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), tensorwalk(&args).stdout);
}

#[test]
fn profile_reports_scaled_error() {
    let out = tensorwalk(&["profile", "--n", "256", "--c", "0", "--format", "json"]);
    assert!(out.status.success());
    let records: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["r"], 1420);
    assert!(records[0]["scaled_error"].as_f64().unwrap() <= 10.0);

    let csv = stdout(&tensorwalk(&["profile", "--n", "32,64", "--c=-1,0,1"]));
    assert!(csv.starts_with("n,c,r,s_exact,s_float,limit,scaled_error\n"));
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn spectra() {
    let csv = stdout(&tensorwalk(&["spectrum", "--n", "4"]));
    assert_eq!(csv, "eigenvalue_exact,eigenvalue_float,multiplicity\n1/1,1.0000000000000000e0,1\n1/2,5.0000000000000000e-1,1\n1/4,2.5000000000000000e-1,1\n0/1,0.0000000000000000e0,2\n");
    let json: Vec<serde_json::Value> =
        serde_json::from_slice(&tensorwalk(&["spectrum", "--n", "2", "--q", "3", "--format", "json"]).stdout).unwrap();
    assert_eq!(json.len(), 3);
    assert!(json[2]["multiplicity"].is_null());
    assert_eq!(json[2]["eigenvalue_exact"], "1/9");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sn-sep", "--n", "1"][..],
        &["sn-sep"][..],
        &["gl-sep", "--n", "1", "--q", "2"][..],
        &["gl-sep", "--n", "2", "--q", "1"][..],
        &["occupancy", "--n", "3", "--rmax", "2", "--samples", "0"][..],
        &["sn-sep", "--n", "3", "--format", "xml"][..],
        &["bogus"][..],
    ] {
        assert_eq!(tensorwalk(args).status.code(), Some(2), "{args:?}");
    }
}
