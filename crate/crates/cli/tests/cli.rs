use std::fs;
use std::process::{Command, Output};

use nlinterf::COLUMNS;

fn nlinterf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlinterf"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(header: &str, name: &str) -> usize {
    header.split(',').position(|c| c == name).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(nlinterf(&["--help"]).status.code(), Some(0));
    assert_eq!(nlinterf(&["--version"]).status.code(), Some(0));
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(nlinterf(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        nlinterf(&["sweep", "--scenario", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(
        nlinterf(&["sweep", "--format", "xml"]).status.code(),
        Some(1)
    );
    assert_eq!(
        nlinterf(&[
            "sensitivity",
            "--set",
            "t_s=1.5",
            "--set",
            "n=1",
            "--set",
            "phi=3"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        nlinterf(&["sensitivity", "--set", "n=1"]).status.code(),
        Some(1)
    );
    assert_eq!(nlinterf(&["verify", "--count", "0"]).status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_three() {
    let out = nlinterf(&[
        "sweep",
        "--scenario",
        "compare",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/out.csv"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, r#"{"scenario": "scaling", "sed": 3}"#).unwrap();
    let out = nlinterf(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("sed"), "{err}");

    fs::write(
        &path,
        r#"{"scenario": "scaling", "axes": {"n": {"min": 1, "max": 2, "cnt": 3}}}"#,
    )
    .unwrap();
    assert_eq!(
        nlinterf(&["sweep", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    fs::write(&path, r#"{"scenario": "scaling", "fixed": {"rho": 0.5}}"#).unwrap();
    assert_eq!(
        nlinterf(&["sweep", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn csv_schema_is_stable() {
    for scenario in [
        "hybrid-map",
        "fisher-surface",
        "fisher-vs-n",
        "scaling",
        "compare",
    ] {
        let out = nlinterf(&["sweep", "--scenario", scenario]);
        assert!(
            out.status.success(),
            "{scenario}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), COLUMNS.len(), "{line}");
            assert!(fields[0].starts_with(scenario), "{line}");
            assert!(fields[18] == "true" || fields[18] == "false");
            for f in &fields[1..18] {
                assert!(
                    f.is_empty() || f.parse::<f64>().is_ok_and(f64::is_finite),
                    "{line}"
                );
            }
        }
    }
}

#[test]
fn margin_endpoints_through_the_binary() {
    let out = nlinterf(&["sweep", "--scenario", "hybrid-map", "--set", "n=10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    let (rho, s2) = (column(header, "rho"), column(header, "sigma2_min"));
    let margin: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| l.starts_with("hybrid-map-margin,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[rho].parse().unwrap(), f[s2].parse().unwrap())
        })
        .collect();
    assert_eq!(margin.len(), 101);
    assert_eq!(margin[0].0, 0.0);
    assert_eq!(margin[100].0, 1.0);
    assert!((margin[0].1 - 0.022_727_272_727_272_7).abs() < 1e-12);
    assert!((margin[100].1 - 0.272_727_272_727_272_7).abs() < 1e-12);
}

#[test]
fn hybrid_map_flags_dark_fringe() {
    let out = nlinterf(&["sweep", "--scenario", "hybrid-map"]);
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    let (phi, sigma2) = (column(header, "phi"), column(header, "sigma2"));
    let zero_phase: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("hybrid-map,"))
        .filter(|l| l.split(',').nth(phi) == Some("0.0"))
        .collect();
    assert_eq!(zero_phase.len(), 101);
    for line in zero_phase {
        assert!(line.ends_with(",true"), "{line}");
        assert_eq!(line.split(',').nth(sigma2), Some(""));
    }
}

#[test]
fn json_output_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let out = nlinterf(&[
        "sensitivity",
        "--set",
        "n=10",
        "--set",
        "phi=3.0",
        "--format",
        "json",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["metadata"]["seed"], 9);
    assert_eq!(v["metadata"]["config"]["fixed"]["n"], 10.0);
    assert_eq!(v["records"].as_array().unwrap().len(), 1);
    let r = &v["records"][0];
    assert_eq!(r["scenario"], "sensitivity");
    let (s2, f) = (r["sigma2"].as_f64().unwrap(), r["fisher"].as_f64().unwrap());
    assert!((s2 * f - 1.0).abs() < 1e-12);
}

#[test]
fn config_file_drives_custom_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(
        &path,
        r#"{
            "variant": "mandel",
            "axes": {"n": [1, 2], "phi": {"min": 0.5, "max": 1.5, "count": 3}},
            "fixed": {"t_s": 1.0, "t_i": 1.0}
        }"#,
    )
    .unwrap();
    let out = nlinterf(&["sweep", "--config", path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 6);

    let out = nlinterf(&["sweep", "--config", path.to_str().unwrap(), "--set", "n=5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1 + 3);
}

#[test]
fn verify_reports_every_class() {
    let out = nlinterf(&["verify", "--count", "100", "--seed", "3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "class,samples,max_deviation,tolerance,passed"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["verify", "--count", "300", "--seed", "11"],
        vec!["sweep", "--scenario", "scaling"],
        vec!["sweep", "--scenario", "fisher-surface", "--format", "json"],
    ] {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let path = dir.path().join(format!("run{k}"));
                let mut full = args.clone();
                full.extend(["--out", path.to_str().unwrap()]);
                assert!(nlinterf(&full).status.success());
                fs::read(&path).unwrap()
            })
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs[0] == outputs[1], "{args:?}");
    }
}
