//! End-to-end tests against the compiled binary: exit-code contract
//! (0 property holds, 1 counterexample, 2 usage/cap errors), file formats,
//! and byte-level determinism of outputs.

use std::path::Path;
use std::process::{Command, Output};

use propb::hypergraph::fano_plane;

fn propb_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_propb"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn construct_gebauer_writes_files_with_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = propb_in(dir.path(), &["construct", "gebauer", "--k", "4", "--t", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let hyp = std::fs::read_to_string(dir.path().join("gebauer_k4_t2.hyp")).unwrap();
    assert!(hyp.contains("p hyp 24 624 4"));
    assert!(hyp.starts_with("c cfg: construct gebauer"));
    let report = std::fs::read_to_string(dir.path().join("gebauer_k4_t2.hyp.report")).unwrap();
    assert!(report.contains("raw_choice_count = 5376"));
    assert!(report.contains("distinct_edges = 624"));
}

#[test]
fn construct_outputs_are_deterministic() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let out = propb_in(
            d.path(),
            &[
                "construct",
                "improved",
                "--k",
                "4",
                "--t",
                "2",
                "--r-override",
                "3",
            ],
        );
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(d1.path().join("improved_k4_t2.hyp")).unwrap();
    let b = std::fs::read(d2.path().join("improved_k4_t2.hyp")).unwrap();
    assert_eq!(a, b);
    let ra = std::fs::read(d1.path().join("improved_k4_t2.hyp.report")).unwrap();
    let rb = std::fs::read(d2.path().join("improved_k4_t2.hyp.report")).unwrap();
    assert_eq!(ra, rb);
}

#[test]
fn verify_solve_fano_is_uncolorable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.hyp");
    std::fs::write(&path, fano_plane().to_text()).unwrap();
    let out = propb_in(dir.path(), &["verify", "solve", "fano.hyp"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("NotColorable"));

    // exhaustive mode and a second worker must agree
    let out = propb_in(
        dir.path(),
        &[
            "verify",
            "solve",
            "fano.hyp",
            "--mode",
            "exhaustive",
            "--workers",
            "2",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("NotColorable"));
}

#[test]
fn verify_solve_expect_uncolorable_flags_witness() {
    let dir = tempfile::tempdir().unwrap();
    let fano = fano_plane();
    let edges: Vec<Vec<u32>> = fano.edges().iter().skip(1).cloned().collect();
    let minus = propb::hypergraph::Hypergraph::new(7, 3, edges).unwrap();
    std::fs::write(dir.path().join("minus.hyp"), minus.to_text()).unwrap();
    let out = propb_in(
        dir.path(),
        &["verify", "solve", "minus.hyp", "--expect-uncolorable"],
    );
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("Colorable"));
    assert!(text.contains("witness"));
}

#[test]
fn usage_and_cap_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // missing --t
    let out = propb_in(dir.path(), &["construct", "gebauer", "--k", "4"]);
    assert_eq!(code(&out), 2);

    // oversized exhaustive request
    let edges: Vec<Vec<u32>> = (1..30).map(|v| vec![v, v + 1]).collect();
    let big = propb::hypergraph::Hypergraph::new(30, 2, edges).unwrap();
    std::fs::write(dir.path().join("big.hyp"), big.to_text()).unwrap();
    let out = propb_in(
        dir.path(),
        &["verify", "solve", "big.hyp", "--mode", "exhaustive"],
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    // decimals are rejected where exactness matters
    let out = propb_in(
        dir.path(),
        &[
            "construct", "improved", "--k", "4", "--t", "2", "--eps", "0.5",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn guarantee_counterexamples_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = propb_in(
        dir.path(),
        &[
            "verify",
            "guarantee",
            "gebauer",
            "--k",
            "4",
            "--t",
            "2",
            "--s",
            "4",
            "--check",
            "dominated",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("guarantee FAILS"));

    let out = propb_in(
        dir.path(),
        &[
            "verify",
            "guarantee",
            "gebauer",
            "--k",
            "4",
            "--t",
            "2",
            "--check",
            "dominated",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("guarantee holds"));
}

#[test]
fn hitset_writes_header_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "hitset",
        "--m",
        "9",
        "--d",
        "2",
        "--vol",
        "1/2",
        "--r-override",
        "3",
    ];
    let out = propb_in(dir.path(), &args);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("hitset_m9_d2.hs")).unwrap();
    assert!(text.contains("p hitset 9 2 "));
    let again = propb_in(dir.path(), &args);
    assert_eq!(code(&again), 0);
    let text2 = std::fs::read_to_string(dir.path().join("hitset_m9_d2.hs")).unwrap();
    assert_eq!(text, text2);
}

#[test]
fn expander_reports_positive_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let out = propb_in(
        dir.path(),
        &["expander", "--n", "3", "--measure", "exhaustive"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("alpha_measured"));
    assert!(text.contains("m 9"));
}

#[test]
fn bounds_table_contains_erdos_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = propb_in(dir.path(), &["bounds", "--k", "100"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("112.20"));
    let out = propb_in(dir.path(), &["bounds", "--k", "100", "--format", "kv"]);
    assert!(stdout(&out).contains("erdos_log2_edges"));
}

#[test]
fn prop1_oracle_sweep_holds() {
    let dir = tempfile::tempdir().unwrap();
    let out = propb_in(dir.path(), &["prop1-oracle", "--s", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("violations 0"));
    let out = propb_in(
        dir.path(),
        &[
            "prop1-oracle",
            "--s",
            "4",
            "--a",
            "1,2",
            "--b",
            "1,2",
            "--eps",
            "1/2",
        ],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("count 3 bound 4/3"));
}
