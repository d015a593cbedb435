use std::collections::BTreeMap;
use std::fs;

use kaehler_cli::checks::{catalogue, traceability_table};
use kaehler_cli::config::{Format, RunConfig, Suite};
use kaehler_cli::{run_suite, CliError};
use tempfile::tempdir;

fn config(suite: Suite, dim: usize, out: &std::path::Path) -> RunConfig {
    let mut c = RunConfig::new(suite, dim, out);
    c.trials = 5;
    c.seed = 11;
    c
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempdir().unwrap();
    for (suite, dim) in [(Suite::Kahler, 3), (Suite::All, 2)] {
        for format in [Format::Json, Format::Csv] {
            let (a, b) = (dir.path().join("a"), dir.path().join("b"));
            let mut ca = config(suite, dim, &a);
            ca.format = format;
            let mut cb = ca.clone();
            cb.out_path = b.clone();
            run_suite(&ca).unwrap();
            run_suite(&cb).unwrap();
            assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{suite} {format:?}");
        }
    }
}

#[test]
fn timing_is_opt_in() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut c = config(Suite::Kahler, 2, &out);
    run_suite(&c).unwrap();
    let plain: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert!(plain.get("wall_time_ms").is_none());
    c.timing = true;
    run_suite(&c).unwrap();
    let timed: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert!(timed["wall_time_ms"].is_number());
}

#[test]
fn json_report_shape() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    let report = run_suite(&config(Suite::Crosscheck, 2, &out)).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["config"]["suite"], "crosscheck");
    assert_eq!(v["config"]["trials"], 5);
    assert_eq!(v["config"]["seed"], 11);
    assert!(v["config"].get("out_path").is_none());
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), report.checks.len());
    for c in checks {
        for key in [
            "check_id",
            "suite",
            "identity",
            "n_trials",
            "max_abs_err",
            "max_rel_err",
            "rule",
            "tol",
            "pass",
        ] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    assert_eq!(v["pass"], true);
}

#[test]
fn csv_report_has_one_row_per_check() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let mut c = config(Suite::Reduction, 2, &out);
    c.format = Format::Csv;
    let report = run_suite(&c).unwrap();
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# schema_version=1 "));
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[0], "check_id");
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), report.checks.len());
    for (row, rec) in rows.iter().zip(&report.checks) {
        assert_eq!(&row[0], rec.check_id);
        assert_eq!(row[4].parse::<f64>().unwrap(), rec.max_abs_err);
    }
}

#[test]
fn suite_all_matches_the_shipped_traceability_table() {
    let shipped = include_str!("../../../book/src/traceability.md");
    let table: Vec<&str> = shipped.lines().filter(|l| l.starts_with('|')).collect();
    let generated = traceability_table();
    let generated: Vec<&str> = generated.lines().collect();
    assert_eq!(table, generated, "regenerate the table with `kaehler list-checks`");

    let documented: BTreeMap<String, String> = table[2..]
        .iter()
        .map(|l| {
            let id = l.split('`').nth(1).unwrap().to_string();
            (id, l.to_string())
        })
        .collect();
    assert_eq!(documented.len(), table.len() - 2, "check ids must be unique");

    let dir = tempdir().unwrap();
    let out = dir.path().join("all.json");
    let mut c = config(Suite::All, 2, &out);
    c.trials = 2;
    let report = run_suite(&c).unwrap_or_else(|e| panic!("{e}"));
    let reported: Vec<&str> = report.checks.iter().map(|r| r.check_id.as_str()).collect();
    let listed: Vec<&str> = catalogue().iter().map(|(_, c)| c.id).collect();
    assert_eq!(reported, listed);
    for rec in &report.checks {
        let row = &documented[&rec.check_id];
        assert!(row.contains(&rec.identity.replace('|', "\\|")), "{}", rec.check_id);
        assert!(row.contains(&format!("| {} |", rec.suite)), "{}", rec.check_id);
    }
}

#[test]
fn failing_checks_still_write_a_report() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("u.json");
    let report = run_suite(&config(Suite::Unfolding, 3, &out)).unwrap();
    assert!(!report.pass);
    let failed: Vec<&str> = report.failures().map(|c| c.check_id.as_str()).collect();
    assert_eq!(failed, ["frame_duality"]);
    let dual = report.checks.iter().find(|c| c.check_id == "frame_duality").unwrap();
    assert!((dual.max_rel_err - 1.5).abs() < 1e-9, "{}", dual.max_rel_err);
    assert!(out.exists());
}

#[test]
fn configuration_errors_come_before_any_output() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    let cases = [
        config(Suite::Reduction, 3, &out),
        config(Suite::Crosscheck, 1, &out),
        config(Suite::All, 4, &out),
        config(Suite::Kahler, 0, &out),
        config(Suite::Unfolding, 65, &out),
        RunConfig {
            trials: 0,
            ..config(Suite::Kahler, 2, &out)
        },
        RunConfig {
            tol: 0.0,
            ..config(Suite::Kahler, 2, &out)
        },
        RunConfig {
            tol: f64::NAN,
            ..config(Suite::Kahler, 2, &out)
        },
    ];
    for c in cases {
        let err = run_suite(&c).unwrap_err();
        assert!(matches!(err, CliError::Config(_)), "{c:?}: {err}");
        assert_eq!(err.exit_code(), 2);
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn unwritable_paths_are_io_errors_without_partial_files() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/r.json");
    let err = run_suite(&config(Suite::Kahler, 2, &missing)).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }), "{err}");
    assert_eq!(err.exit_code(), 3);

    // the target is a directory: the checks run, the final rename fails
    let target = dir.path().join("taken");
    fs::create_dir(&target).unwrap();
    let err = run_suite(&config(Suite::Kahler, 2, &target)).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }), "{err}");
    let left: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(left, ["taken"]);
    assert_eq!(fs::read_dir(&target).unwrap().count(), 0);
}

#[test]
fn every_suite_passes_at_small_dimensions() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    for dim in [1, 2, 3, 5] {
        for suite in [Suite::Kahler, Suite::Unfolding] {
            let report = run_suite(&config(suite, dim, &out)).unwrap();
            let failed: Vec<&str> = report.failures().map(|c| c.check_id.as_str()).collect();
            let expected: &[&str] = if suite == Suite::Unfolding && dim > 1 {
                &["frame_duality"]
            } else {
                &[]
            };
            assert_eq!(failed, expected, "{suite} at N = {dim}");
        }
    }
}
