use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn stit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stit")).args(args).output().expect("binary runs")
}

fn simulate_into(dir: &Path, jobs: &str) -> Output {
    stit(&[
        "--jobs", jobs, "simulate", "--window", "square:2", "--measure", "iso:2", "--t", "1", "--seed", "7", "--replicates", "3", "--out",
        dir.to_str().unwrap(),
    ])
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn simulate_writes_replicates_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate_into(dir.path(), "2");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let files = dir_bytes(dir.path());
    assert_eq!(files.iter().filter(|(n, _)| n.ends_with(".json")).count(), 3);
    let summary = String::from_utf8(fs::read(dir.path().join("summary.csv")).unwrap()).unwrap();
    for key in ["# window: square:2", "# measure: iso:2", "# t: 1", "# seed: 7", "# version: stit "] {
        assert!(summary.contains(key), "missing {key} in\n{summary}");
    }
    assert!(summary.contains("seed,facets,total_surface,cells,sigma"));
    assert_eq!(summary.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn simulate_is_reproducible_for_any_job_count() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(simulate_into(a.path(), "1").status.success());
    assert!(simulate_into(b.path(), "4").status.success());
    assert_eq!(dir_bytes(a.path()), dir_bytes(b.path()));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = stit(&["simulate", "--window", "square:1", "--measure", "iso:2", "--t", "0", "--out", d]);
    assert_eq!(out.status.code(), Some(2));
    let out = stit(&["simulate", "--window", "square:1", "--measure", "iso:3", "--t", "1", "--out", d]);
    assert_eq!(out.status.code(), Some(2));
    let out = stit(&["simulate", "--window", "triangle:1", "--measure", "iso:2", "--t", "1", "--out", d]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("triangle"));
    assert_eq!(stit(&["check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn exact_table_and_energy_refusal() {
    let out = stit(&["exact", "--window", "square:1", "--d", "2", "--R", "100,1000,10000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ratios: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("square:1,"))
        .map(|l| l.split(',').nth(6).unwrap().parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()), "{ratios:?}");

    let out = stit(&["exact", "--window", "square:1", "--energy2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("diverges"));

    let out = stit(&["exact", "--window", "ball3:1", "--energy2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("# E2: 3.9478"));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn pcf_curve_orders_models_and_decays() {
    let out = stit(&["pcf", "--d", "2", "--t", "1", "--rmax", "50", "--steps", "1000"]);
    assert!(out.status.success());
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 1000);
    for r in &rows {
        let (s, p): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!(s < p);
    }
    let last: f64 = rows.last().unwrap()[1].parse().unwrap();
    assert!((last - 1.0).abs() < 1e-3);
}

#[test]
fn pcf_empirical_adds_estimate_columns() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let sim = stit(&["simulate", "--window", "square:3", "--measure", "iso:2", "--t", "1", "--seed", "3", "--replicates", "20", "--out", d]);
    assert!(sim.status.success());
    let csv = dir.path().join("pcf.csv");
    let out = stit(&[
        "pcf", "--d", "2", "--t", "1", "--rmax", "1", "--steps", "5", "--empirical", d, "--pairs", "2000", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.contains("r,g_stit,g_pht,g_hat,se"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.len() == 5 && r[3].parse::<f64>().is_ok()));
}

#[test]
fn check_reports_lines_and_exit_code() {
    let out = stit(&["check", "--suite", "bp", "--samples", "50000", "--seed", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[bp]")).count(), 3);
    let failed = text.contains("FAIL");
    assert_eq!(out.status.code(), Some(if failed { 1 } else { 0 }));
}
