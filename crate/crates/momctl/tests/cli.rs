//! Exit-code and output contracts of the binary: 0 success, 1 reported
//! validation/verification failure, 2 malformed input or refused
//! precondition.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn momctl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_momctl"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    momctl()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap_or(-1)
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const TWO_POINT_METRIC: &str =
    r#"{"labels":["a","b"],"kind":"metric","entries":[["0","1"],["1","0"]]}"#;

#[test]
fn validate_accepts_a_two_point_metric() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "m.json", TWO_POINT_METRIC);
    let out = run(&["validate", "m.json"], dir.path());
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("\"ok\": true"));
}

#[test]
fn validate_reports_violations_and_exits_1() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "bad.json",
        r#"{"labels":["a","b","c"],"kind":"metric","entries":[["0","1","3"],["1","0","1"],["3","1","0"]]}"#,
    );
    let out = run(&["validate", "bad.json"], dir.path());
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("\"ok\": false"));
    assert!(text.contains("triangle"));
}

#[test]
fn validate_pseudo_skips_positivity() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "zero.json",
        r#"{"labels":["a","b"],"kind":"metric","entries":[["0","0"],["0","0"]]}"#,
    );
    let strict = run(&["validate", "zero.json"], dir.path());
    assert_eq!(code(&strict), 1);
    let relaxed = run(&["validate", "zero.json", "--pseudo"], dir.path());
    assert_eq!(code(&relaxed), 0);
}

#[test]
fn malformed_input_exits_2_with_diagnostics_on_stderr() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "junk.json", r#"{"labels": ["a"]}"#);
    let out = run(&["validate", "junk.json"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(!stderr(&out).is_empty());

    let gone = run(&["validate", "missing.json"], dir.path());
    assert_eq!(code(&gone), 2);
}

#[test]
fn dist_prints_the_exact_rational() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "d.json", TWO_POINT_METRIC);
    write(
        dir.path(),
        "e.json",
        r#"{"labels":["a","b"],"kind":"metric","entries":[["0","5/2"],["5/2","0"]]}"#,
    );
    let out = run(&["dist", "d.json", "e.json"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3/2");
}

#[test]
fn dist_on_mismatched_ground_sets_exits_2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "d.json", TWO_POINT_METRIC);
    write(
        dir.path(),
        "e.json",
        r#"{"labels":["a","z"],"kind":"metric","entries":[["0","1"],["1","0"]]}"#,
    );
    let out = run(&["dist", "d.json", "e.json"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn embed_then_verify_round_trip_is_exact() {
    let dir = TempDir::new().unwrap();
    let gen = run(
        &["gen", "metric", "--n", "5", "--seed", "99", "-o", "m.json"],
        dir.path(),
    );
    assert_eq!(code(&gen), 0);
    for (target, witness) in [("onepoint", "w1.json"), ("frechet", "w2.json")] {
        let embed = run(&["embed", target, "m.json", "-o", witness], dir.path());
        assert_eq!(code(&embed), 0, "{target}: {}", stderr(&embed));
        let verify = run(&["verify", witness, "m.json"], dir.path());
        assert_eq!(code(&verify), 0, "{target}: {}", stderr(&verify));
        assert!(stdout(&verify).contains("\"distortion\": \"0\""));
    }
}

#[test]
fn embed_discrete_refuses_an_insufficient_pinned_bound() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "fam.json",
        r#"{"vectors":[{"name":"a","values":["2"],"bound":"2"},{"name":"b","values":["1"],"bound":"1"}]}"#,
    );
    let ok = run(
        &["embed", "discrete", "fam.json", "-o", "w.json"],
        dir.path(),
    );
    assert_eq!(code(&ok), 0);

    // Pinned bound 1 gives clamp level 0, but the family's bound is 2.
    let refused = run(
        &["embed", "discrete", "fam.json", "-o", "w2.json", "--B", "1"],
        dir.path(),
    );
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("clamp level too small"));
    assert!(!dir.path().join("w2.json").exists());
}

#[test]
fn embed_discrete_pinned_coordinate_count_must_match() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "fam.json",
        r#"{"vectors":[{"name":"a","values":["1","0"],"bound":"1"}]}"#,
    );
    let out = run(
        &["embed", "discrete", "fam.json", "-o", "w.json", "--M", "3"],
        dir.path(),
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn embed_c0_and_discrete_verify_against_their_family() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "fam.json",
        r#"{"vectors":[{"name":"f","values":["1","0"],"bound":"1"},{"name":"g","values":["2","0"],"bound":"2"}]}"#,
    );
    for (args, witness) in [
        (
            vec!["embed", "c0", "fam.json", "-o", "c.json", "--M", "2"],
            "c.json",
        ),
        (
            vec!["embed", "discrete", "fam.json", "-o", "d.json"],
            "d.json",
        ),
    ] {
        let embed = run(&args, dir.path());
        assert_eq!(code(&embed), 0, "{}", stderr(&embed));
        let verify = run(&["verify", witness, "fam.json"], dir.path());
        assert_eq!(code(&verify), 0, "{}", stderr(&verify));
    }
}

#[test]
fn embed_frechet_honors_a_custom_order() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "m.json",
        r#"{"labels":["a","b","c"],"kind":"metric","entries":[["0","1","1"],["1","0","2"],["1","2","0"]]}"#,
    );
    let embed = run(
        &[
            "embed", "frechet", "m.json", "-o", "w.json", "--order", "c,a,b",
        ],
        dir.path(),
    );
    assert_eq!(code(&embed), 0, "{}", stderr(&embed));
    let text = std::fs::read_to_string(dir.path().join("w.json")).unwrap();
    assert!(text.contains(r#""enumeration": ["#));
    let verify = run(&["verify", "w.json", "m.json"], dir.path());
    assert_eq!(code(&verify), 0);

    let unknown = run(
        &[
            "embed", "frechet", "m.json", "-o", "x.json", "--order", "a,b,z",
        ],
        dir.path(),
    );
    assert_eq!(code(&unknown), 2);
}

#[test]
fn reports_can_be_written_to_a_file() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "m.json", TWO_POINT_METRIC);
    let out = run(&["validate", "m.json", "-o", "report.json"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let report = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(report.contains("\"ok\": true"));
}

#[test]
fn verify_against_the_wrong_original_fails() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "m.json", TWO_POINT_METRIC);
    write(
        dir.path(),
        "other.json",
        r#"{"labels":["a","b"],"kind":"metric","entries":[["0","7"],["7","0"]]}"#,
    );
    let embed = run(&["embed", "onepoint", "m.json", "-o", "w.json"], dir.path());
    assert_eq!(code(&embed), 0);
    let verify = run(&["verify", "w.json", "other.json"], dir.path());
    assert_eq!(code(&verify), 1);
    assert!(stderr(&verify).contains("does not record"));
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let first = run(
        &["gen", "metric", "--n", "6", "--seed", "5", "-o", "a.json"],
        dir.path(),
    );
    let second = run(
        &["gen", "metric", "--n", "6", "--seed", "5", "-o", "b.json"],
        dir.path(),
    );
    assert_eq!(code(&first), 0);
    assert_eq!(code(&second), 0);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);

    let band = run(
        &[
            "gen",
            "band",
            "--n",
            "5",
            "--seed",
            "11",
            "--L",
            "1/3",
            "-o",
            "band.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&band), 0);
    let check = run(&["validate", "band.json"], dir.path());
    assert_eq!(code(&check), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = run(&["embed", "unknown", "x", "-o", "y"], dir.path());
    assert_eq!(code(&out), 2);
}
