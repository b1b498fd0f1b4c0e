use std::process::{Command, Output};

use rauzy::{apply_path, Pair, Path};
use serde_json::Value;

fn rauzy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rauzy")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = rauzy(&[args, &["--json"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

#[test]
fn same_class_of_the_three_letter_pairs() {
    let out = rauzy(&["same-class", "a b c / c b a", "a b c / c a b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");
    let out = rauzy(&["same-class", "a b c / c b a", "a b c d / d c b a"]);
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn connect_prints_a_replayable_path() {
    let (p, q) = ("a b c / c b a", "a b c / c a b");
    let out = rauzy(&["connect", p, q]);
    assert_eq!(stdout(&out).trim(), "r0");
    let p = "a b c d e / e d c b a";
    let walk: Path = "r0 r1^2 r0".parse().unwrap();
    let q = apply_path(&Pair::parse(p).unwrap(), &walk).unwrap().to_string();
    for extended in [false, true] {
        let mut args = vec!["connect", p, &q];
        if extended {
            args.push("--extended");
        }
        let v = json(&args);
        let path: Path = v["path"].as_str().unwrap().parse().unwrap();
        assert_eq!(apply_path(&Pair::parse(p).unwrap(), &path).unwrap(), Pair::parse(&q).unwrap());
    }
}

#[test]
fn classify_json_round_trips() {
    let v = json(&["classify", "a b c d e f / f c e b d a"]);
    let canon = Pair::parse(v["canonical"].as_str().unwrap()).unwrap();
    let again = json(&["classify", &canon.to_string()]);
    assert_eq!(v, again);
    let ext = json(&["classify", "a b c d e f / f c e b d a", "--extended"]);
    assert_eq!(ext["p_list"], v["p_list"]);
    assert!(ext["m"].is_null());
}

#[test]
fn normalize_paths_replay() {
    let p = "a b c d e f g / g e c f b d a";
    let v = json(&["normalize", p]);
    let path: Path = v["path"].as_str().unwrap().parse().unwrap();
    let typed = Pair::parse(v["typed"].as_str().unwrap()).unwrap();
    assert_eq!(apply_path(&Pair::parse(p).unwrap(), &path).unwrap(), typed);
}

#[test]
fn invariants_report() {
    let v = json(&["invariants", "a b c d / d c b a"]);
    assert_eq!(v["arf"], "10");
    assert_eq!(v["p"], serde_json::json!([3]));
    let v = json(&["invariants", "a b c d / d c b a", "--max-arf-n", "3"]);
    assert!(v["arf"].is_null());
}

#[test]
fn enumerate_writes_json_lines() {
    let dir = std::env::temp_dir().join(format!("rauzy-census-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("n5.jsonl");
    let out = rauzy(&["enumerate", "--n", "5", "--out", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.iter().map(|l| l["size"].as_u64().unwrap()).sum::<u64>(), 71);
    assert!(lines.iter().all(|l| l["m"].is_u64()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(rauzy(&["classify", "a b / a b"]).status.code(), Some(1));
    assert_eq!(rauzy(&["classify", "a b c / c b"]).status.code(), Some(1));
    assert_eq!(rauzy(&["connect", "a b c / c b a", "a b c / b c a"]).status.code(), Some(1));
    assert_eq!(rauzy(&["enumerate", "--n", "12"]).status.code(), Some(1));
    assert_eq!(rauzy(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rauzy(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_small_suite_passes() {
    let out = rauzy(&["verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}

#[test]
fn verify_reports_the_farthest_pair_exception() {
    let out = rauzy(&["verify", "--n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let failed: Vec<u64> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v["passed"] == false)
        .map(|v| v["id"].as_u64().unwrap())
        .collect();
    assert_eq!(failed, [3]);
}
