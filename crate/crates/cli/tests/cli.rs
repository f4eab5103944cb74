// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafsynth")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn synth_xor() {
    let out = run(&["synth", "--formula", "A^B", "--library", "less,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("gates: 5"), "{text}");
}

#[test]
fn eval_prints_table() {
    let out = run(&["eval", "--formula", "A"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "n=1:0b01");
    assert_eq!(stdout(&run(&["eval", "--formula", "A*B"])).trim(), "n=2:0b0001");
    assert_eq!(stdout(&run(&["eval", "--formula", "A", "--vars", "2"])).trim(), "n=2:0b0011");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["synth", "--spec", "n=2:0x6", "--library", "nand", "--max-gates", "2"]), Some(2));
    assert_eq!(code(&["synth", "--formula", "(A^B^C^D)*(E+F)", "--library", "nand", "--timeout", "0"]), Some(3));
    assert_eq!(code(&["synth", "--formula", "A*B*C*D*E*F*G"]), Some(4));
    assert_eq!(code(&["eval", "--formula", "A<B<C"]), Some(1));
    assert_eq!(code(&["synth", "--formula", "A", "--library", "nope"]), Some(1));
    assert_eq!(code(&["synth"]), Some(1));
    assert_eq!(code(&["synth", "--formula", "A", "--spec", "n=1:0x1"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn errors_are_one_line() {
    let out = run(&["synth", "--spec", "n=2:0x6", "--library", "nand", "--max-gates", "2"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn synth_json_schema() {
    let v = json(&["synth", "--spec", "n=2:0x1", "--json"]);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["cost", "depth", "exact", "formula", "gates", "truth"]);
    assert_eq!(v["formula"], "(A<1)<B");
    assert_eq!(v["gates"], 2);
    assert_eq!(v["cost"], 2);
    assert_eq!(v["depth"], 2);
    assert_eq!(v["exact"], true);
    assert_eq!(v["truth"], "n=2:0b0001");
}

#[test]
fn synth_json_round_trips_through_eval() {
    for spec in ["n=2:0x6", "n=3:0x1E", "n=3:0x01", "n=2:0x0", "n=3:0xF0"] {
        for lib in ["less,1", "nand", "and,xor,1"] {
            let v = json(&["synth", "--spec", spec, "--library", lib, "--json"]);
            let truth = v["truth"].as_str().unwrap();
            let n = &truth[2..truth.find(':').unwrap()];
            let formula = v["formula"].as_str().unwrap();
            let out = run(&["eval", "--formula", formula, "--vars", n]);
            assert_eq!(stdout(&out).trim(), truth, "{spec} {lib}: {formula}");
        }
    }
}

#[test]
fn transistor_costs() {
    let v = json(&["synth", "--formula", "A*B", "--cost", "transistors", "--json"]);
    assert_eq!(v["cost"], 8);
    let v = json(&["synth", "--formula", "A*B", "--library", "nand", "--cost", "transistors", "--json"]);
    assert_eq!(v["cost"], 12);
}

#[test]
fn pla_and_library_files() {
    let mut pla = tempfile::NamedTempFile::new().unwrap();
    writeln!(pla, "# xor\n00 0\n01 1\n10 1\n11 0").unwrap();
    let path = pla.path().to_str().unwrap();
    let v = json(&["synth", "--pla", path, "--json"]);
    assert_eq!(v["gates"], 5);
    let dnf = json(&["rewrite", "--pla", path, "--form", "dnf", "--json"]);
    let cnf = json(&["rewrite", "--pla", path, "--form", "cnf", "--json"]);
    for v in [dnf, cnf] {
        let out = run(&["eval", "--formula", v["output"].as_str().unwrap(), "--vars", "2"]);
        assert_eq!(stdout(&out).trim(), "n=2:0b0110");
    }

    let mut lib = tempfile::NamedTempFile::new().unwrap();
    writeln!(lib, "# just nor\nnor = 0b1000 cost 4").unwrap();
    let path = lib.path().to_str().unwrap();
    let v = json(&["synth", "--formula", "A*B", "--library", path, "--json"]);
    assert_eq!(v["gates"], 3);
}

#[test]
fn incomplete_pla_is_rejected() {
    let mut pla = tempfile::NamedTempFile::new().unwrap();
    writeln!(pla, "00 0\n01 1\n10 1").unwrap();
    assert_eq!(run(&["synth", "--pla", pla.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn rewrite_trace() {
    let v = json(&["rewrite", "--formula", "A+B", "--trace", "--json"]);
    assert_eq!(v["output"], "(A<(B<1))<1");
    assert_eq!(v["gates"], 3);
    assert_eq!(v["ones"], 2);
    assert!(!v["steps"].as_array().unwrap().is_empty());
    let text = stdout(&run(&["rewrite", "--formula", "~A", "--quiet"]));
    assert_eq!(text.trim(), "A<1");
}

#[test]
fn compare_libs() {
    let v = json(&["compare-libs", "--library", "less,1", "--library", "impl,0", "--json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row["total"], 28);
        assert_eq!(row["non_redundant"], true);
        assert_eq!(row["counts"].as_array().unwrap().len(), 16);
        assert!(row.get("note").is_none());
    }
    let md = stdout(&run(&["compare-libs", "--library", "nand", "--markdown"]));
    assert!(md.contains("| nand | 46 | yes |"), "{md}");
    let partial = json(&["compare-libs", "--library", "and,eq,0", "--json"]);
    assert_eq!(partial[0]["total"], 23);
}

#[test]
fn compare_libs_reports_unreachable() {
    let mut lib = tempfile::NamedTempFile::new().unwrap();
    writeln!(lib, "and = 0b0001 cost 6\nor = 0b0111 cost 6").unwrap();
    let v = json(&["compare-libs", "--library", lib.path().to_str().unwrap(), "--json"]);
    assert_eq!(v[0]["total"], Value::Null);
    assert!(v[0]["unreachable"].as_array().unwrap().contains(&Value::from("A^B")));
}

#[test]
fn cost_table() {
    let v = json(&["cost-table", "--json"]);
    let col = |key: &str| v.as_array().unwrap().iter().map(|r| r[key].as_u64().unwrap()).collect::<Vec<_>>();
    assert_eq!(col("less_cost"), [16, 20, 8, 16, 16, 16, 20, 16, 12, 4, 28]);
    assert_eq!(col("nand_cost"), [20, 20, 12, 16, 24, 28, 16, 20, 4, 20, 32]);
    let md = stdout(&run(&["cost-table", "--markdown"]));
    assert!(md.contains("| 2x2 half-adder | 20+8=28 | 20+12=32 |"), "{md}");
}

#[test]
fn global_flags() {
    let out = run(&["--seed", "7", "--threads", "3", "--quiet", "synth", "--formula", "A*B"]);
    assert_eq!(stdout(&out).trim(), "(A<1)<B");
}
