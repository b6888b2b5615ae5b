use std::process::{Command, Output};

use minres::cli::{parse_pwl_csv, render_json, run, Algorithm, JsonReport, RunConfig};

fn minres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minres")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("minres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_json_round_trips_byte_for_byte() {
    let out = minres(&["analyze", "--phi", "z^2/(1+5z)^4", "--prime", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rep: JsonReport = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.min_value.as_deref(), Some("8/3"));
    assert_eq!(render_json(&rep), text.trim_end());
}

#[test]
fn text_and_json_agree_on_rationals() {
    let args = ["analyze", "--phi", "z^2/(1+5z)^4", "--prime", "5"];
    let text = String::from_utf8(minres(&args).stdout).unwrap();
    let json = String::from_utf8(minres(&[&args[..], &["--json"]].concat()).stdout).unwrap();
    let rep: JsonReport = serde_json::from_str(&json).unwrap();
    assert!(text.contains(&format!("minimum of ordres: {}", rep.min_value.unwrap())));
    assert!(text.contains(&format!("ordres at gauss point: {}", rep.ordres_at_gauss)));
    assert!(text.contains(&format!("rational minimum: {}", rep.hv_min.unwrap())));
    for a in rep.locus.unwrap().anchors {
        assert!(text.contains(&format!("center {} s {}", a.center, a.s)));
    }
}

#[test]
fn emitted_csv_rebuilds_path_functions() {
    let path = tmp("paths.csv");
    let out = minres(&["analyze", "--phi", "(5z^3 + z^2)/5", "--prime", "5", "--emit-pwl", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("path_id,root_center,slope,intercept_num,intercept_den"));
    let mut cfg = RunConfig::new(5);
    cfg.algorithm = Algorithm::A;
    let direct = run(&cfg, "(5z^3 + z^2)/5").unwrap();
    let back = parse_pwl_csv(&csv).unwrap();
    assert_eq!(back.len(), direct.per_path.len());
    for ((id, center, f), x) in back.iter().zip(&direct.per_path) {
        assert_eq!(*id, x.id);
        assert_eq!(center, &x.center.to_string());
        assert_eq!(f, &x.func);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(minres(&["analyze", "--phi", "(z^2-1)/(z^2-1)", "--prime", "3"]).status.code(), Some(2));
    assert_eq!(minres(&["analyze", "--phi", "(z+", "--prime", "3"]).status.code(), Some(2));
    assert_eq!(minres(&["analyze", "--phi", "z^2", "--prime", "4"]).status.code(), Some(2));
    let capped = minres(&["analyze", "--phi", "(z^3-5)/z^2", "--prime", "5", "--algorithm", "a", "--max-ext-degree", "1"]);
    assert_eq!(capped.status.code(), Some(3));
    let b_on_mobius = minres(&["analyze", "--phi", "5z", "--prime", "5", "--algorithm", "b"]);
    assert_eq!(b_on_mobius.status.code(), Some(2));
}

#[test]
fn spec_examples_through_the_binary() {
    let json = |args: &[&str]| -> JsonReport {
        let out = minres(args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let a = json(&["analyze", "--phi", "(z^3-5)/z^2", "--prime", "5", "--algorithm", "a", "--json"]);
    assert_eq!((a.min_value.as_deref(), a.potential_good_reduction), (Some("0"), Some(true)));
    let b = json(&["analyze", "--phi", "(z^2-1)/(2z)", "--prime", "2", "--algorithm", "b", "--json"]);
    assert_eq!((b.hv_min.as_deref(), b.hv_absolute), (Some("2"), Some(false)));
    let m = json(&["analyze", "--phi", "5z", "--prime", "5", "--json"]);
    assert_eq!(m.degree, 1);
    assert_eq!(m.locus.unwrap().kind, "Path");
}

#[test]
fn batch_mode_reports_each_line() {
    let path = tmp("batch.txt");
    std::fs::write(&path, "# examples\n5 (z^3-5)/z^2\n3 (z^3-z)/3\n4 z^2\n").unwrap();
    let out = minres(&["batch", "--input", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let lines: Vec<serde_json::Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["report"]["min_value"], "0");
    assert_eq!(lines[1]["report"]["min_value"], "3");
    assert_eq!(lines[2]["exit_code"], 2);
}
