use std::process::{Command, Output};

use podles_cli::{
    aggregate, pair_rows, render_pair, render_verify, verify_lines, Format, RunConfig, Status,
    Suite, PAIR_CSV_HEADER,
};
use proptest::prelude::*;
use serde_json::Value;

fn podles(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_podles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csv_pair_table_has_fourteen_rows() {
    let o = podles(&[
        "pair", "--q", "1/2", "--s", "1", "--n-max", "3", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), PAIR_CSV_HEADER.join(","));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 14);
    for r in &rows {
        assert_eq!(r[4].parse::<f64>().unwrap(), r[0].parse::<f64>().unwrap());
        assert_eq!(r[6], "1");
        assert_eq!(r[7], "true");
    }
    let forms: Vec<_> = rows.iter().map(|r| format!("{}{}", r[0], r[1])).collect();
    assert_eq!(forms[6..10], ["0E", "1E", "1Q", "1P1"]);
}

#[test]
fn zero_n_max_gives_one_row() {
    let o = podles(&["pair", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["pair_rho"]["value"], 0.0);
    assert_eq!(rows[0]["pair_eps"]["value"], 1.0);
}

#[test]
fn json_row_shape() {
    let o = podles(&["pair", "--n-max", "1", "--q", "4/5", "--s", "1/2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys = |x: &Value| x.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&v), ["conversions", "pass", "q", "rows", "s"]);
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["N"] == 1 && r["form"] == "Q")
        .unwrap();
    assert_eq!(
        keys(row),
        [
            "N",
            "certified",
            "flagged",
            "form",
            "pair_eps",
            "pair_rho",
            "q",
            "s"
        ]
    );
    assert_eq!(
        keys(&row["pair_rho"]),
        ["certified", "gap", "rounded", "tail_bound", "value"]
    );
    assert_eq!(row["pair_rho"]["rounded"], 1);
    assert_eq!(row["pair_eps"]["rounded"], 1);
    assert_eq!(row["q"], "4/5");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--q", "2", "--s", "1"][..],
        &["verify", "--q", "1/2", "--s", "0"],
        &["verify", "--q", "1/2", "--s", "-1"],
        &["pair", "--trunc", "8"],
        &["pair", "--n-max", "-1"],
        &["pair", "--tol", "0"],
        &["pair", "--q", "abc"],
        &["pair", "--format", "xml"],
        &["verify", "--suites", "symbolic,nope"],
        &["frobnicate"],
    ] {
        let o = podles(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn decimal_conversion_is_echoed() {
    let o = podles(&["pair", "--n-max", "0", "--q", "0.3", "--s", "2.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], "3/10");
    assert_eq!(v["conversions"][1]["value"], "5/2");
    assert!(String::from_utf8_lossy(&o.stderr).contains("--q 0.3 read as 3/10"));
}

#[test]
fn symbolic_suite_passes() {
    let o = podles(&[
        "verify", "--q", "1/2", "--s", "1", "--suites", "symbolic", "--n-max", "2", "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let per_n = |n: &str| {
        text.lines()
            .filter(|l| l.split(',').nth(1) == Some(n))
            .count()
    };
    assert!(per_n("0") >= 14 && per_n("1") > per_n("0"));
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.starts_with("symbolic,") && l.ends_with(",true")));
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = [
        "verify",
        "--q",
        "3/10",
        "--s",
        "2",
        "--n-max",
        "1",
        "--trunc",
        "32",
        "--suites",
        "operator,bundles,index",
    ];
    let a = podles(&args);
    let b = podles(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let c = podles(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn selected_suites_run_in_fixed_order() {
    let cfg = RunConfig::new(
        "1/2",
        "1",
        1,
        32,
        1e-6,
        Format::Json,
        &[Suite::Index, Suite::Bundles],
    )
    .unwrap();
    let lines = verify_lines(&cfg).unwrap();
    let first_index = lines.iter().position(|l| l.suite == Suite::Index).unwrap();
    assert!(lines[..first_index]
        .iter()
        .all(|l| l.suite == Suite::Bundles));
    assert!(lines[first_index..].iter().all(|l| l.suite == Suite::Index));
}

#[test]
fn uncertified_row_is_flagged() {
    let cfg = RunConfig::new("1/2", "1", 1, 16, 1e-6, Format::Json, &[]).unwrap();
    let mut rows = pair_rows(&cfg).unwrap();
    assert_eq!(render_pair(&cfg, &rows).unwrap().status, Status::Ok);
    rows[2].certified = false;
    let out = render_pair(&cfg, &rows).unwrap();
    assert_eq!(out.status, Status::Failed);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    let flagged: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["flagged"].as_bool().unwrap())
        .collect();
    assert_eq!(flagged.iter().filter(|&&f| f).count(), 1);
    assert!(flagged[2]);
    assert_eq!(v["pass"], false);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exit_code_reflects_injected_failures(fails in proptest::collection::vec(any::<bool>(), 0..40), csv in any::<bool>()) {
        let format = if csv { Format::Csv } else { Format::Json };
        let cfg = RunConfig::new("1/2", "1", 0, 16, 1e-6, format, &[Suite::Symbolic]).unwrap();
        let base = verify_lines(&cfg).unwrap();
        let mut lines = Vec::new();
        for (i, &fail) in fails.iter().enumerate() {
            let mut l = base[i % base.len()].clone();
            if fail {
                l.pass = false;
                l.residual = 1.0;
            }
            lines.push(l);
        }
        let out = render_verify(&cfg, &lines).unwrap();
        let want = if fails.iter().any(|&f| f) { Status::Failed } else { Status::Ok };
        prop_assert_eq!(out.status, want);
        prop_assert_eq!(aggregate(lines.iter().map(|l| l.pass)), want);
        prop_assert_eq!(want.code(), u8::from(fails.iter().any(|&f| f)));
    }
}
