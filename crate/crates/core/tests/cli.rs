use std::process::{Command, Output};

use mumkit::mum::MumSet;

fn mumkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mumkit"))
        .args(args)
        .env_remove("MUMKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn construct_writes_a_loadable_set() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    let out = mumkit(&["construct", "--d", "4", "--M", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("axioms=pass"));
    let text = std::fs::read_to_string(&path).unwrap();
    let set = MumSet::from_json(&text).unwrap();
    assert_eq!((set.dim(), set.len()), (4, 3));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], "mumkit/1");
    assert_eq!(v["library_version"], mumkit::VERSION);
    assert_eq!(v["config"]["m"][0], 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["construct", "--d", "3", "--t", "1.0"][..],
        &["construct", "--d", "3", "--M", "5"],
        &["construct", "--d", "1"],
        &["construct", "--d", "3", "--tolerance", "bogus=1"],
        &["verify", "--d", "3", "--eta", "1.5"],
        &["verify", "--d", "3", "--alpha", "zero"],
        &["entangle-scan", "--d", "2", "--Ms", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(mumkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_cap_is_validated() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_mumkit"))
            .args(["verify", "--d", "2", "--samples", "6"])
            .env("MUMKIT_THREADS", value)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(0));
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn verify_csv_rows_parse_losslessly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let out = mumkit(&[
        "verify",
        "--d",
        "3",
        "--M",
        "2",
        "--samples",
        "9",
        "--seed",
        "7",
        "--eta",
        "0.3,1.0",
        "--format",
        "csv",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# schema_version=mumkit/1"));
    assert!(lines.next().unwrap().starts_with("# library_version="));
    let config: serde_json::Value =
        serde_json::from_str(lines.next().unwrap().trim_start_matches("# config=")).unwrap();
    assert_eq!(config["seed"], 7);
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // 1 coincidence + 6 Rényi + 4 Tsallis + Shannon + 2×4 inefficiency per state.
    assert_eq!(rows.len(), 9 * 20);
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    for row in &rows {
        assert_eq!(row.len(), header.len());
        assert_eq!(row[col("satisfied")], "true");
        let bound = row[col("bound")];
        let x: f64 = bound.parse().unwrap();
        assert_eq!(format!("{x:.16e}"), bound);
    }
    assert!(rows.iter().any(|r| r[col("alpha")] == "inf"));
}

#[test]
fn verify_json_and_falsification_exit_code() {
    let out = mumkit(&["verify", "--d", "2", "--samples", "4", "--ensemble", "pure"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["states"], 4);
    assert_eq!(v["config"]["ensemble"], "pure");
    assert_eq!(v["records"][0]["state"]["kind"], "pure_random");

    // A zero tolerance on the exact identity trips on round-off alone.
    let out = mumkit(&["verify", "--d", "3", "--samples", "30", "--tolerance", "identity=0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("counterexample"));
}

#[test]
fn entangle_scan_reports_threshold_and_trivial_sets() {
    let out = mumkit(&["entangle-scan", "--d", "2", "--gamma-points", "11"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * 11);
    for r in rows {
        let gamma = r["gamma"].as_f64().unwrap();
        let th = r["threshold"].as_f64().unwrap();
        if (gamma - th).abs() > 1e-6 {
            assert_eq!(r["entangled"].as_bool().unwrap(), gamma > th);
        }
    }

    let out = mumkit(&["entangle-scan", "--d", "3", "--t", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: trivial efficiency"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .skip(1)
        .all(|l| l.contains(",false,")));
}
