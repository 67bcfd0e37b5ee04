use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn localcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn record(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().expect("a record")).expect("JSON record")
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = localcut(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

#[test]
fn gen_dnd_header_and_idempotence() {
    let a = localcut(&["gen", "--family", "dnd", "--n", "12", "--d", "5"]);
    let b = localcut(&["gen", "--family", "dnd", "--n", "12", "--d", "5"]);
    assert!(a.status.success());
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("24 60 5 U\n"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_random_is_seeded() {
    let args = [
        "gen", "--family", "random", "--n", "30", "--d", "3", "--seed", "7", "--ids", "random",
    ];
    assert_eq!(localcut(&args).stdout, localcut(&args).stdout);
    let other = localcut(&[
        "gen", "--family", "random", "--n", "30", "--d", "3", "--seed", "8", "--ids", "random",
    ]);
    assert_ne!(localcut(&args).stdout, other.stdout);
}

#[test]
fn gen_abcd_has_dn_over_two_arcs() {
    let out = localcut(&["gen", "--family", "abcd", "--d", "3", "--n", "12"]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.starts_with("12 18 3 D\n"));
    assert_eq!(text.lines().count(), 1 + 18);
}

#[test]
fn run_median_on_d24_5() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "d24.txt",
        &["--family", "dnd", "--n", "12", "--d", "5"],
    );
    let out = localcut(&["run", "--algo", "median", "--graph", &g]);
    assert!(out.status.success());
    let r = record(&out);
    assert!(r["cut0"].as_u64().unwrap() >= 18);
    assert_eq!(r["rounds_used"], 1);
    assert_eq!(r["floor_value_num"], 18);
    assert_eq!(r["pass"], true);

    let out = localcut(&["run", "--algo", "median", "--graph", &g, "--congest", "1"]);
    let serial = record(&out);
    assert_eq!(serial["rounds_used"], 5);
    assert_eq!(serial["max_message_bits"], 1);
    assert_eq!(serial["cut0"], r["cut0"]);
}

#[test]
fn run_om_flips_on_abcd() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "abcd.txt",
        &["--family", "abcd", "--d", "3", "--n", "12"],
    );
    let out = localcut(&["run", "--algo", "om-flips", "--flips", "2", "--graph", &g]);
    assert!(out.status.success());
    let r = record(&out);
    assert_eq!(r["cut0"], 6);
    assert!(r["cut2"].as_u64().unwrap() >= 6);
    assert_eq!(r["opt"], 10);
    // 71/115 of OPT = 10
    assert_eq!(
        (r["floor_value_num"].as_i64(), r["floor_value_den"].as_i64()),
        (Some(142), Some(23))
    );
    assert_eq!(r["rounds_used"], 2);

    let r = record(&localcut(&[
        "run",
        "--algo",
        "oriented-median",
        "--graph",
        &g,
    ]));
    assert_eq!(r["cut0"], 6);
    assert_eq!(r["rounds_used"], 0);
    assert_eq!(
        (r["floor_value_num"].as_i64(), r["floor_value_den"].as_i64()),
        (Some(6), Some(1))
    );
}

#[test]
fn run_median_on_even_degree_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "c12.txt",
        &["--family", "cnd", "--n", "12", "--d", "4"],
    );
    let out = localcut(&["run", "--algo", "median", "--graph", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(record(&out)["error"], "unsupported-degree");
}

#[test]
fn run_dflip_oscillates_on_double_circulant() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "d20.txt",
        &["--family", "dnd", "--n", "10", "--d", "3"],
    );
    let out = localcut(&[
        "run", "--algo", "dflip", "--rounds", "4", "--start", "halves", "--graph", &g,
    ]);
    assert!(out.status.success());
    let r = record(&out);
    for k in 0..=4 {
        assert_eq!(r[format!("cut{k}")], 10);
    }
}

#[test]
fn run_seqflip_and_random() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "r.txt",
        &["--family", "random", "--n", "40", "--d", "5", "--seed", "3"],
    );
    let r = record(&localcut(&[
        "run", "--algo", "seqflip", "--graph", &g, "--seed", "9",
    ]));
    assert_eq!(r["maximal"], true);
    assert_eq!(r["pass"], true);
    let a = record(&localcut(&[
        "run", "--algo", "random", "--graph", &g, "--seed", "9",
    ]));
    let b = record(&localcut(&[
        "run", "--algo", "random", "--graph", &g, "--seed", "9",
    ]));
    assert_eq!(a, b);
}

#[test]
fn oracle_values() {
    let dir = tempfile::tempdir().unwrap();
    let c12 = gen_to(
        dir.path(),
        "c12.txt",
        &["--family", "cnd", "--n", "12", "--d", "4"],
    );
    assert_eq!(
        record(&localcut(&["oracle", "--graph", &c12]))["optimum"],
        24
    );
    let d12 = gen_to(
        dir.path(),
        "d12.txt",
        &[
            "--family",
            "dnd",
            "--n",
            "6",
            "--d",
            "3",
            "--orient",
            "clockwise",
        ],
    );
    assert_eq!(
        record(&localcut(&["oracle", "--graph", &d12, "--directed"]))["optimum"],
        9
    );
    let abcd = gen_to(
        dir.path(),
        "abcd.txt",
        &["--family", "abcd", "--d", "3", "--n", "12"],
    );
    assert_eq!(
        record(&localcut(&["oracle", "--graph", &abcd, "--directed"]))["optimum"],
        10
    );
}

#[test]
fn oracle_budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen_to(
        dir.path(),
        "big.txt",
        &[
            "--family", "random", "--n", "30", "--d", "3", "--orient", "random",
        ],
    );
    let out = localcut(&["oracle", "--graph", &g, "--directed"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(record(&out)["error"], "budget");
}

#[test]
fn verify_suites() {
    let out = localcut(&["verify", "--suite", "claim1"]);
    assert!(out.status.success());
    let r = record(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["skipped"].as_array().unwrap().len(), 2);
    assert_eq!(
        localcut(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(
        localcut(&["run", "--algo", "median"]).status.code(),
        Some(2)
    );
    assert_eq!(
        localcut(&["gen", "--family", "cnd", "--d", "4"])
            .status
            .code(),
        Some(2)
    );
    let out = localcut(&[
        "run",
        "--algo",
        "median",
        "--graph",
        "/nonexistent/graph.txt",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
