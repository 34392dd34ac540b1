mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hashi::bench::{write_csv, ManifestRow, MANIFEST_NAME};
use hashi::{generate, write_instance, GenConfig};

fn hashi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hashi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_prints_an_instance() {
    let o = hashi(&[
        "generate", "--n", "20", "--rows", "8", "--cols", "8", "--seed", "3",
    ]);
    assert!(o.status.success());
    let expected = generate(&GenConfig::new(20, 8, 8, 0.0, 0.5, 3)).unwrap();
    assert_eq!(stdout(&o), write_instance(&expected.puzzle));
}

#[test]
fn solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let instance = common::fixture_path("grid7.txt");
    let o = hashi(&["solve", path(&instance), "--out", path(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance,"));
    let row = lines.next().unwrap();
    assert!(
        row.starts_with("grid7,") && row.contains(",feasible,"),
        "{row}"
    );

    let sol = dir.path().join("grid7.sol.txt");
    let o = hashi(&["verify", path(&instance), path(&sol)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ok\n");
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("p.txt");
    let solution = dir.path().join("p.sol.txt");
    fs::write(&instance, "1 3\n2.2\n").unwrap();
    fs::write(&solution, "1 3\n2-2\n").unwrap();
    let o = hashi(&["verify", path(&instance), path(&solution)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("needs 2 bridges but has 1"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_rejects_mismatched_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("p.txt");
    let solution = dir.path().join("p.sol.txt");
    fs::write(&instance, "1 3\n1.1\n").unwrap();
    fs::write(&solution, "1 4\n1-1.\n").unwrap();
    let o = hashi(&["verify", path(&instance), path(&solution)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension mismatch"));
}

#[test]
fn missing_files_and_bad_flags_are_usage_errors() {
    assert_eq!(
        hashi(&["solve", "/nonexistent/x.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(hashi(&["solve"]).status.code(), Some(2));
    assert_eq!(hashi(&["bogus"]).status.code(), Some(2));
    assert_eq!(hashi(&["generate", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn oracle_counts_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("p.txt");
    fs::write(&instance, "3 3\n2.2\n...\n2.2\n").unwrap();
    let o = hashi(&["oracle", path(&instance), "--witnesses", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text, "feasible assignments: 1\n3 3\n2-2\n|.|\n2-2\n");
}

#[test]
fn ablate_writes_both_arms() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = Vec::new();
    for seed in 0..4 {
        let cfg = GenConfig::new(30, 9, 9, 0.1, 0.5, seed);
        let g = generate(&cfg).unwrap();
        let id = format!("small_{seed}");
        fs::write(
            dir.path().join(format!("{id}.txt")),
            write_instance(&g.puzzle),
        )
        .unwrap();
        rows.push(ManifestRow {
            file: format!("{id}.txt"),
            id,
            n: cfg.n,
            rows: cfg.rows,
            cols: cfg.cols,
            alpha: cfg.alpha,
            beta: cfg.beta,
            seed,
            reseeds: 0,
            achieved_cycles: Some(g.achieved_cycles),
            status: "ok".into(),
        });
    }
    let manifest = dir.path().join(MANIFEST_NAME);
    write_csv(&manifest, &rows).unwrap();
    let out = dir.path().join("results");
    let o = hashi(&["ablate", "--manifest", path(&manifest), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("with weak bound:    4 solved"), "{text}");
    assert!(text.contains("verdict mismatches: 0"));
    let bench = fs::read_to_string(out.join("rows.csv")).unwrap();
    assert_eq!(bench.lines().count(), 1 + 8);
    assert!(out.join("summary.csv").exists());
}
