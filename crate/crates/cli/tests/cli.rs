//! End-to-end checks of the command-line interface: output shapes,
//! exit codes and byte-determinism of the JSON form.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ivlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivlog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_program(contents: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().expect("temp dir");
    let path: PathBuf = dir.path().join("program.pre");
    let mut file = std::fs::File::create(&path).expect("temp file");
    file.write_all(contents.as_bytes()).expect("write");
    (dir, path.to_string_lossy().into_owned())
}

#[test]
fn compare_reports_verdict_and_measures() {
    let out = ivlog(&["compare", "tp", "[0,1]", "[0.8,0.9]"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("LESS\n"), "{text}");
    assert!(text.contains("midpoint=0.500000"));
    assert!(text.contains("midpoint=0.850000"));

    let out = ivlog(&["compare", "k", "[0.5,1]", "[0,0]"]);
    assert_eq!(stdout(&out), "INCOMPARABLE\n");

    let out = ivlog(&["compare", "kp", "[0.5,1]", "[0,0]"]);
    assert!(stdout(&out).starts_with("LESS\n"));
    assert!(stdout(&out).contains("width=0.500000"));

    let out = ivlog(&["compare", "tp", "[0.5,0.5]", "[0,1]"]);
    assert!(stdout(&out).starts_with("EQUIVALENT\n"));

    let out = ivlog(&["compare", "t", "[0.4,0.8]", "[0.6,0.9]"]);
    assert_eq!(stdout(&out), "LESS\n");
    let out = ivlog(&["compare", "t", "[0.4,0.8]", "[0.6,0.7]"]);
    assert_eq!(stdout(&out), "INCOMPARABLE\n");
}

#[test]
fn malformed_input_exits_2() {
    let out = ivlog(&["compare", "tp", "[0.8,0.4]", "[0,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("inverted"));

    let out = ivlog(&["compare", "zz", "[0,1]", "[0,1]"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ivlog(&["apply", "warp", "[0,1]"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ivlog(&["apply", "tpr", "[0,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("two intervals"));
}

#[test]
fn apply_evaluates_operators() {
    let cases: &[(&[&str], &str)] = &[
        (&["apply", "neg", "[0.9,1]"], "[0,0.1]\n"),
        (&["apply", "tpr", "[0.6,0.6]", "[0.3,0.7]"], "[0.18,0.42]\n"),
        (&["apply", "tminp", "[0.1,0.5]", "[0.2,0.3]"], "[0.2,0.3]\n"),
        (&["apply", "tmin", "[0.8,0.8]", "[0.5,1]"], "[0.5,0.8]\n"),
        (&["apply", "spr", "[0.4,0.4]", "[0.8,1]"], "[0.88,1]\n"),
        (&["apply", "smax", "[0.2,0.4]", "[0.3,0.3]"], "[0.3,0.4]\n"),
        (&["apply", "sminp", "[0.5,0.5]", "0.5"], "[0.5,0.5]\n"),
        (&["apply", "tppr", "[0.4,0.8]", "[0.5,0.6]"], "[0.2,0.4]\n"),
        (
            &["apply", "simp", "[0.5,0.5]", "[0.5,0.5]"],
            "[0.75,0.75]\n",
        ),
        (&["apply", "imin", "[0.3,0.5]", "[0.6,0.8]"], "[1,1]\n"),
        (&["apply", "ipr", "[0.2,0.8]", "[0.3,0.4]"], "[0.7,0.7]\n"),
        (&["apply", "negl4", "[0,1]"], "[0.333333333,0.666666667]\n"),
    ];
    for (args, want) in cases {
        let out = ivlog(args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out), *want, "{args:?}");
    }

    // A midpoint-class result names its centre and representative.
    let out = ivlog(&["apply", "imin", "[0.6,0.8]", "[0.3,0.5]"]);
    assert_eq!(stdout(&out), "m-set(center=0.4) canonical=[0.4,0.4]\n");
}

#[test]
fn run_prints_sorted_belief_set() {
    let out = ivlog(&["run", &fixture("roads.pre")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "cold: [0.6,0.6]\nrisky: [0.24,0.4]\nsnow: [0.32,0.4]\nwet: [0.4,0.4]\n"
    );

    let out = ivlog(&[
        "run",
        &fixture("identity.pre"),
        "--config",
        "conjunctor=tmin",
        "--config",
        "rule_application=tmin",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("equal(a,b): [0,0.1]"), "{text}");

    let out = ivlog(&["run", &fixture("triage.pre")]);
    let text = stdout(&out);
    assert!(text.contains("dr1: [1,1]"), "{text}");
    assert!(!text.contains("dr2"), "{text}");

    let out = ivlog(&["run", &fixture("tweety.pre")]);
    assert!(stdout(&out).contains("fly: [0,0]"));
}

#[test]
fn run_json_is_byte_deterministic() {
    let first = ivlog(&["run", &fixture("roads.pre"), "--json"]);
    let second = ivlog(&["run", &fixture("roads.pre"), "--json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        stdout(&first),
        "{\"cold\":[0.6,0.6],\"risky\":[0.24,0.4],\"snow\":[0.32,0.4],\"wet\":[0.4,0.4]}\n"
    );
}

#[test]
fn run_empty_program_prints_nothing() {
    let (_dir, path) = temp_program("% nothing to do\n");
    let out = ivlog(&["run", &path]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn run_parse_failure_exits_2_with_position() {
    let (_dir, path) = temp_program("cold = [0.6,0.6].\nwet = [0.4,0.4]\nsnow = 0.1.\n");
    let out = ivlog(&["run", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("3:1"), "{}", stderr(&out));
}

#[test]
fn run_semantic_failure_exits_3_naming_the_atom() {
    let (_dir, path) = temp_program("a = [1,1].\nq <- [[0.2,0.5]] a.\n~q <- [[0.4,0.7]] a.\n");
    let out = ivlog(&["run", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("indecision for q"),
        "{}",
        stderr(&out)
    );

    let (_dir, path) = temp_program("dr1 <- [[1,1]] not dr2.\ndr2 <- [[1,1]] not dr1.\n");
    let out = ivlog(&["run", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cycle"), "{}", stderr(&out));

    // An oscillating self-guard never reaches a fixpoint.
    let (_dir, path) = temp_program("a = [0.9,0.9].\np <- [[1,1]] (p <=tp a).\n");
    let out = ivlog(&["run", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("no fixpoint"), "{}", stderr(&out));
}

#[test]
fn run_rejects_bad_config() {
    let out = ivlog(&["run", &fixture("roads.pre"), "--config", "conjunctor=avg"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ivlog(&["run", &fixture("roads.pre"), "--config", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_reports_probabilities_and_agreement() {
    let out = ivlog(&["oracle", "[0.4,0.8]", "[0.6,0.7]"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p_leq=0.625"), "{text}");
    assert!(text.contains("p_geq=0.375"), "{text}");
    assert!(text.contains("order=LESS"), "{text}");
    assert!(text.contains("midpoint_agreement=OK"), "{text}");

    let out = ivlog(&["oracle", "[0,0.3]", "[0.7,1]"]);
    assert!(stdout(&out).contains("p_leq=1"));

    let out = ivlog(&["oracle", "[0,1]", "[0,1]"]);
    let text = stdout(&out);
    assert!(text.contains("p_leq=0.5"), "{text}");
    assert!(text.contains("order=TIE"), "{text}");
}

#[test]
fn oracle_monte_carlo_is_seeded_and_labelled() {
    let args = [
        "oracle",
        "[0.4,0.8]",
        "[0.6,0.7]",
        "--mc",
        "200000",
        "--seed",
        "9",
    ];
    let first = ivlog(&args);
    let second = ivlog(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("rng=ChaCha8"), "{text}");
    assert!(text.contains("seed=9"), "{text}");

    let out = ivlog(&["oracle", "[0,1]", "[0,1]", "--mc", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn laws_pass_on_a_coarse_grid() {
    let out = ivlog(&["laws", "--step", "0.25"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS de_morgan_min_family"), "{text}");
    assert!(text.contains("PASS de_morgan_product_family"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn laws_reject_an_oversized_step() {
    let out = ivlog(&["laws", "--step", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
}
