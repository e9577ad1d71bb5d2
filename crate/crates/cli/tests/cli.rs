// SPDX-License-Identifier: Apache-2.0

//! End-to-end tests of the `wdg` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdg"))
        .args(args)
        .env_remove("WDG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("wdg-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn enumerate_type_a2_lists_three_partitions() {
    let o = wdg(&["enumerate", "--type", "A", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert!(r["weights"].is_array());
        assert!(r["phi1"].is_u64() && r["phi2"].is_u64());
    }
}

#[test]
fn enumerate_filters_are_a_subset() {
    let all = json_lines(&wdg(&["enumerate", "--type", "C", "--rank", "3"]));
    let some = json_lines(&wdg(&[
        "enumerate",
        "--type",
        "C",
        "--rank",
        "3",
        "--odd",
        "--special",
    ]));
    assert!(!some.is_empty() && some.len() < all.len());
    for r in &some {
        assert_eq!(r["odd"], Value::Bool(true));
        assert_eq!(r["special"], Value::Bool(true));
        assert!(all.contains(r));
    }
}

#[test]
fn enumerate_type_d4_tags_very_even_variants() {
    let rows = json_lines(&wdg(&["enumerate", "--type", "D", "--rank", "4"]));
    let tagged: Vec<&Value> = rows
        .iter()
        .filter(|r| !r["id"]["variant"].is_null())
        .collect();
    assert_eq!(tagged.len(), 4);
    let csv = stdout(&wdg(&[
        "enumerate",
        "--type",
        "D",
        "--rank",
        "4",
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with("type,rank,mu,nu,variant,"));
    assert_eq!(csv.lines().count(), rows.len() + 1);
    assert_eq!(csv.lines().filter(|l| l.contains(",plus,")).count(), 2);
}

#[test]
fn constructed_lambda_is_unimodular_through_gram() {
    let o = wdg(&["construct", "--type", "A", "--rank", "2", "--mu", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let path = temp_file("a2.json", &stdout(&o));
    let g = wdg(&[
        "gram",
        "--type",
        "A",
        "--rank",
        "2",
        "--mu",
        "2,1",
        "--lambda",
        path.to_str().unwrap(),
    ]);
    assert_eq!(g.status.code(), Some(0));
    let rec = &json_lines(&g)[0];
    assert_eq!(rec["unimodular"], Value::Bool(true));
    assert!(rec["determinant"] == "1" || rec["determinant"] == "-1");
}

#[test]
fn zero_lambda_has_zero_determinant() {
    let path = temp_file("zero.json", r#"{"ring":"Z","values":[]}"#);
    let g = wdg(&[
        "gram",
        "--type",
        "A",
        "--rank",
        "2",
        "--mu",
        "2,1",
        "--lambda",
        path.to_str().unwrap(),
    ]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(json_lines(&g)[0]["determinant"], "0");
}

#[test]
fn gram_over_gf2_on_nonspecial_c2_vanishes() {
    let path = temp_file(
        "c2.json",
        r#"{"ring":"Z","values":[{"root":[2,0],"value":1}]}"#,
    );
    let g = wdg(&[
        "gram",
        "--type",
        "C",
        "--rank",
        "2",
        "--mu",
        "1",
        "--nu",
        "1",
        "--ring",
        "gf2",
        "--lambda",
        path.to_str().unwrap(),
    ]);
    assert_eq!(g.status.code(), Some(0), "{}", stderr(&g));
    let rec = &json_lines(&g)[0];
    assert_eq!(rec["ring"], "GF2");
    assert_eq!(rec["determinant"], "0");
}

#[test]
fn gram_rejects_bad_lambda_files() {
    let outside = temp_file(
        "outside.json",
        r#"{"ring":"Z","values":[{"root":[1,-1,0],"value":1}]}"#,
    );
    let o = wdg(&[
        "gram",
        "--type",
        "A",
        "--rank",
        "2",
        "--mu",
        "2,1",
        "--lambda",
        outside.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let garbage = temp_file("garbage.json", "not json");
    let o = wdg(&[
        "gram",
        "--type",
        "A",
        "--rank",
        "2",
        "--mu",
        "2,1",
        "--lambda",
        garbage.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = wdg(&[
        "gram",
        "--type",
        "A",
        "--rank",
        "2",
        "--mu",
        "2,1",
        "--lambda",
        "/nonexistent/wdg.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_type_c5_passes_and_is_deterministic() {
    let a = wdg(&["verify", "--type", "C", "--rank", "5", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = wdg(&["verify", "--type", "C", "--rank", "5", "--seed", "0"]);
    assert_eq!(a.stdout, b.stdout);
    let lines = json_lines(&a);
    assert_eq!(lines[0]["header"]["config"]["seed"], 0);
    for v in &lines[1..] {
        assert_eq!(v["passed"], Value::Bool(true));
        if v["special"] == Value::Bool(true) {
            assert_eq!(v["degeneracy_method"], "n/a");
        } else {
            assert!(v["construction_unimodular"].is_null());
        }
    }
}

#[test]
fn seed_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wdg"))
        .args(["verify", "--type", "B", "--rank", "2"])
        .env("WDG_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["header"]["config"]["seed"], 17);
}

#[test]
fn reduce_prints_the_divisor_chain() {
    let o = wdg(&["reduce", "--type", "A", "--rank", "4", "--mu", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["steps"][0], serde_json::json!([5]));
    assert_eq!(rec["end"]["kind"], "zero");
    let o = wdg(&["reduce", "--type", "C", "--rank", "4", "--nu", "3,1"]);
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["steps"], serde_json::json!([[2, 6], [2, 2]]));
}

#[test]
fn construct_rejects_non_special_input() {
    let o = wdg(&[
        "construct",
        "--type",
        "B",
        "--rank",
        "4",
        "--mu",
        "2,2",
        "--nu",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).contains("not special"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        wdg(&["enumerate", "--type", "E", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wdg(&["enumerate", "--type", "B", "--rank", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wdg(&["construct", "--type", "C", "--rank", "3", "--mu", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wdg(&["verify", "--type", "C", "--rank", "3", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn selftest_passes() {
    let o = wdg(&["selftest", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
