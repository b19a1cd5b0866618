//! End-to-end checks of the command-line interface: output formats round-trip
//! through the library parsers, exit codes distinguish usage errors from
//! verification failures, and rendering is byte-stable.

use std::process::{Command, Output};

use stieltjes::cfrac::{parse_grid, ConvergentPair};
use stieltjes::render::parse_ppm;
use stieltjes::ring::{Domain, Poly, Series};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stieltjes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn seq_prints_whitespace_separated_signs() {
    assert_eq!(stdout(&["seq", "--name", "rudin-shapiro", "--len", "8"]), "1 1 1 -1 1 1 -1 1\n");
    assert_eq!(stdout(&["seq", "--name", "paperfolding", "--len", "1"]), "1\n");
}

#[test]
fn expand_mod_4_matches_the_frozen_expansion() {
    let line = stdout(&["expand", "--seq", "paperfolding", "--order", "8", "--mod", "4"]);
    assert_eq!(line, "order=8; 0 1 3 0 1 2 2 2 1\n");
    let series = Series::parse(&line, Domain::Residues(4)).unwrap();
    assert_eq!(series.order(), 8);
}

#[test]
fn expand_over_the_integers() {
    let line = stdout(&["expand", "--seq", "paperfolding", "--order", "8"]);
    assert_eq!(line, "order=8; 0 1 -1 0 1 -2 2 -2 1\n");
    assert!(Series::parse(&line, Domain::Integers).is_ok());
}

#[test]
fn convergent_lines_parse_back() {
    let text = stdout(&["convergent", "--seq", "paperfolding", "--n-max", "5"]);
    let pair = ConvergentPair::parse_lines(&text, 5, Domain::Integers).unwrap();
    assert_eq!(pair.q.constant_term(), Domain::Integers.one());
    assert!(pair.p.constant_term().is_zero());
}

#[test]
fn bconvergent_prints_two_pairs() {
    let text = stdout(&["bconvergent", "--seq", "paperfolding", "--n-max", "2"]);
    let polys: Vec<Poly> = text
        .lines()
        .map(|l| Poly::parse(l.split_once(':').unwrap().1, Domain::Integers).unwrap())
        .collect();
    assert_eq!(polys.len(), 4);
    // block quotients (1, -1, -1, 1): the block P at index 2 is x - x^2
    assert_eq!(polys[0], Poly::from_i64_coeffs(Domain::Integers, &[0, 1, -1]));
    // both block Q polynomials have constant term 1
    assert_eq!(polys[1].constant_term(), Domain::Integers.one());
    assert_eq!(polys[3].constant_term(), Domain::Integers.one());
}

#[test]
fn hankel_prints_signs() {
    let text = stdout(&["hankel", "--seq", "paperfolding", "--n-max", "6"]);
    let signs: Vec<i64> = text
        .lines()
        .map(|l| l.split_once("heilermann=").unwrap().1.parse().unwrap())
        .collect();
    assert_eq!(signs, vec![1, -1, 1, -1, 1, 1]);
}

#[test]
fn kernel_output_is_json() {
    let text = stdout(&[
        "kernel", "--seq", "paperfolding", "--len", "2048", "--depth", "4", "--window", "64",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["comparison_length"], 64);
    assert_eq!(v["saturated"], true);
}

#[test]
fn kernel_squares_control_does_not_saturate() {
    let text = stdout(&["kernel", "--seq", "squares", "--len", "16384"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["saturated"], false);
}

#[test]
fn table_grid_round_trips() {
    let text = stdout(&[
        "table", "--seq", "rudin-shapiro", "--track", "q", "--n-max", "12", "--i-max", "6",
        "--mod", "4",
    ]);
    let rows = parse_grid(&text).unwrap();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r.len() == 7));
    // first column is constant 1
    assert!(rows.iter().all(|r| r[0] == 1));
}

#[test]
fn render_matches_the_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("render.ppm");
    let out = run(&[
        "render", "--seq", "paperfolding", "--track", "q", "--n-max", "16", "--i-max", "15",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(bytes, include_bytes!("golden/render_pf_q_16x16.ppm"));
    let (w, h, _) = parse_ppm(&bytes).unwrap();
    assert_eq!((w, h), (16, 16));
}

#[test]
fn custom_substitution_config_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.txt");
    std::fs::write(
        &path,
        "letters: a b c d\n\
         rule: a -> a b\nrule: b -> c b\nrule: c -> a d\nrule: d -> c d\n\
         code: a = 1\ncode: b = 1\ncode: c = -1\ncode: d = -1\n\
         seed: a\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let line = stdout(&["seq", "--config", cfg, "--len", "8"]);
    assert_eq!(line, "1 1 -1 1 1 -1 -1 1\n");
    let expanded = stdout(&["expand", "--config", cfg, "--order", "8", "--mod", "4"]);
    assert_eq!(expanded, "order=8; 0 1 3 0 1 2 2 2 1\n");
}

#[test]
fn verify_exit_codes() {
    // a passing target exits 0
    let ok = run(&["verify", "lemma-pf", "--n-max", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("lemma-pf: PASS"));

    // an injected coefficient error exits with the verification-failure code
    let flipped = run(&["verify", "lemma-pf", "--n-max", "5", "--perturb", "2"]);
    assert_eq!(flipped.status.code(), Some(3));

    // the diverging closed-form candidate is reported, not hidden
    let divergent = run(&["verify", "theorem1", "--order", "64"]);
    assert_eq!(divergent.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&divergent.stdout).contains("first differs at x^6"));

    // runtime errors (unknown target / sequence) exit 1
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["seq", "--name", "thue-morse", "--len", "4"]).status.code(), Some(1));

    // usage errors exit 2 (missing required flag)
    assert_eq!(run(&["seq", "--name", "paperfolding"]).status.code(), Some(2));
}

#[test]
fn verify_writes_machine_readable_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = run(&[
        "verify", "lemma-rs", "--j-max", "2", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<serde_json::Value> =
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 16);
    assert!(records.iter().all(|r| r["target"] == "lemma-rs" && r["status"] == "pass"));
}

#[test]
fn verify_eqs_and_s_infinity_targets() {
    let ok = run(&["verify", "eqs-2-5", "--n-max", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    // the quartic identity genuinely fails, so this target exits 3 and says so
    let sinf = run(&["verify", "s-infinity", "--order", "64"]);
    assert_eq!(sinf.status.code(), Some(3));
    let text = String::from_utf8_lossy(&sinf.stdout).to_string();
    assert!(text.contains("s-infinity item=1 param=64: PASS"));
    assert!(text.contains("s-infinity item=2 param=64: PASS"));
    assert!(text.contains("s-infinity item=3 param=64: FAIL"));
}
