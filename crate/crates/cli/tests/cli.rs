use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn hamdecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamdecomp")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_to(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend(["--out", path_str(&out)]);
    let o = hamdecomp(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn gen_circulant_has_21_edges_and_manifest() {
    let dir = TempDir::new().unwrap();
    let g = gen_to(&dir, "c7.txt", &["--kind", "circulant", "--n", "7"]);
    let text = std::fs::read_to_string(&g).unwrap();
    assert!(text.starts_with("7 21\n"));
    assert_eq!(text.lines().count(), 22);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("c7.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "gen");
    assert_eq!(manifest["params"]["n"], 7);
    assert_eq!(manifest["output_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn gen_regular_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = gen_to(&dir, "a.txt", &["--kind", "regular", "--n", "101", "--seed", "7"]);
    let b = gen_to(&dir, "b.txt", &["--kind", "regular", "--n", "101", "--seed", "7"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn gen_requires_seed_for_random_kinds() {
    let o = hamdecomp(&["gen", "--kind", "regular", "--n", "11"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hamdecomp(&["gen", "--kind", "circulant", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_almost_regular_window() {
    let o = hamdecomp(&["gen", "--kind", "almost-regular", "--n", "200", "--alpha", "0.4", "--eta", "0.02", "--seed", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let g = hamdecomp::graph::io::parse_oriented(&text).unwrap();
    let p = g.semidegrees();
    assert!(p.min >= 76 && p.max <= 84, "{p:?}");
}

#[test]
fn decompose_small_inputs() {
    let dir = TempDir::new().unwrap();
    let c5 = gen_to(&dir, "c5.txt", &["--kind", "circulant", "--n", "5"]);
    let o = hamdecomp(&["decompose", path_str(&c5), "--seed", "1", "--format", "json"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["cycles"].as_array().unwrap().len(), 2);
    assert_eq!(r["fraction"], 1.0);

    let tri = write(&dir, "tri.txt", "3 3\n0 1\n1 2\n2 0\n");
    let o = hamdecomp(&["decompose", path_str(&tri), "--seed", "1", "--format", "json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["cycles"].as_array().unwrap().len(), 1);
}

#[test]
fn decompose_regular_101_and_verify_roundtrip() {
    let dir = TempDir::new().unwrap();
    let g = gen_to(&dir, "g.txt", &["--kind", "regular", "--n", "101", "--seed", "4"]);
    let report = dir.path().join("r.json");
    let run = || hamdecomp(&["decompose", path_str(&g), "--seed", "5", "--format", "json", "--out", path_str(&report)]);
    assert!(run().status.success());
    let first = std::fs::read(&report).unwrap();
    assert!(run().status.success());
    assert_eq!(first, std::fs::read(&report).unwrap());
    let r: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert!(r["fraction"].as_f64().unwrap() > 0.5);
    assert!(r["stats"]["provenance"].is_array());

    let o = hamdecomp(&["verify", path_str(&g), path_str(&report)]);
    assert_eq!(o.status.code(), Some(0));

    let mut tampered = r.clone();
    let cycle = tampered["cycles"][0].as_array_mut().unwrap();
    cycle.swap(0, 1);
    let bad = write(&dir, "bad.json", &tampered.to_string());
    let o = hamdecomp(&["verify", path_str(&g), path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("invalid"));
}

#[test]
fn verify_empty_report_is_vacuous() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", "3 3\n0 1\n1 2\n2 0\n");
    let empty = write(&dir, "empty.json", "");
    assert_eq!(hamdecomp(&["verify", path_str(&tri), path_str(&empty)]).status.code(), Some(0));
    let no_cycles = write(&dir, "none.json", "{\"cycles\": []}");
    assert_eq!(hamdecomp(&["verify", path_str(&tri), path_str(&no_cycles)]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.txt", "3 2\n0 1\n");
    assert_eq!(hamdecomp(&["decompose", path_str(&broken), "--seed", "0"]).status.code(), Some(2));
    assert_eq!(hamdecomp(&["bounds", path_str(&broken)]).status.code(), Some(2));
}

#[test]
fn kelly_check_small_orders() {
    let o = hamdecomp(&["kelly-check", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "n 3 decomposed 2/2\n");
    let o = hamdecomp(&["kelly-check", "--n", "5", "--jobs", "2", "--format", "json"]);
    let s: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((s["enumerated"].as_u64(), s["decomposed"].as_u64()), (Some(24), Some(24)));
    assert_eq!(hamdecomp(&["kelly-check", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn bounds_tables() {
    let dir = TempDir::new().unwrap();
    let c7 = gen_to(&dir, "c7.txt", &["--kind", "circulant", "--n", "7"]);
    let o = hamdecomp(&["bounds", path_str(&c7), "--format", "json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["exact"], "31");
    assert_eq!(r["sandwich"], true);

    let k5: String = std::iter::once("5 20\n".to_string())
        .chain((0..5).flat_map(|u| (0..5).filter(move |&v| v != u).map(move |v| format!("{u} {v}\n"))))
        .collect();
    let k5 = write(&dir, "k5.txt", &k5);
    let o = hamdecomp(&["bounds", path_str(&k5), "--format", "json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Derangements of five elements.
    assert_eq!(r["exact"], "44");
    assert_eq!(r["sandwich"], true);

    let tri = write(&dir, "tri.txt", "3 3\n0 1\n1 2\n2 0\n");
    let o = hamdecomp(&["bounds", path_str(&tri), "--format", "json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r["exact"].as_str(), r["bregman_upper"].as_f64()), (Some("1"), Some(1.0)));
    assert!((r["vdw_lower"].as_f64().unwrap() - 6.0 / 27.0).abs() < 1e-12);
}

#[test]
fn bench_rows() {
    let o = hamdecomp(&["bench", "--suite", "matching", "--sizes", "100,1000", "--seed", "1", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ms: Vec<f64> = rows.as_array().unwrap().iter().map(|r| r["median_ms"].as_f64().unwrap()).collect();
    assert_eq!(ms.len(), 2);
    assert!(ms[0] <= ms[1]);
    let o = hamdecomp(&["bench", "--suite", "flow", "--sizes", "100,400", "--seed", "1", "--jobs", "2"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 3);
    assert_eq!(hamdecomp(&["bench", "--suite", "flow"]).status.code(), Some(2));
}
