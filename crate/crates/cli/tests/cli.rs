//! End-to-end tests of the `f4res` binary: exit codes, determinism,
//! output formats and fixture verification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BUNDLED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f4res")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A private copy of the bundled fixtures.
fn fixture_copy(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("f4res-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    for e in fs::read_dir(BUNDLED).unwrap() {
        let p = e.unwrap().path();
        fs::copy(&p, dir.join(p.file_name().unwrap())).unwrap();
    }
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn jacquet_verifies_against_bundled_fixtures() {
    for (p, z) in [("4", "5/2"), ("1", "1")] {
        let o = run(&["jacquet", "--parabolic", p, "--z", z, "--verify"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stderr(&o).contains(": ok"));
    }
    let o = run(&["jacquet", "--parabolic", "4", "--z", "5/2"]);
    assert!(stdout(&o).starts_with("Jacquet module of i(P4, z0 = 5/2): 21 exponents, total multiplicity 24\n"));
}

#[test]
fn output_is_deterministic() {
    let args = ["images", "--parabolic", "4", "--z", "5/2", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_round_trips_as_a_fixture() {
    let dir = fixture_copy("roundtrip");
    let o = run(&["jacquet", "--parabolic", "1", "--z", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    assert!(json.contains("\"id\": \"D.3\""));
    fs::write(dir.join("D.3.json"), &json).unwrap();
    let again = run(&["--fixtures", path_str(&dir), "jacquet", "--parabolic", "1", "--z", "1", "--json", "--verify"]);
    assert_eq!(again.status.code(), Some(0), "{}", stderr(&again));
    assert_eq!(stdout(&again), json);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn corrupted_fixture_fails_with_a_diff_naming_it() {
    let dir = fixture_copy("corrupt");
    let path = dir.join("D.1.json");
    let text = fs::read_to_string(&path).unwrap();
    let broken = text.replacen("\"mult\": 2", "\"mult\": 3", 1);
    assert_ne!(text, broken);
    fs::write(&path, broken).unwrap();
    let o = run(&["--fixtures", path_str(&dir), "jacquet", "--parabolic", "4", "--z", "5/2", "--verify"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("--- fixture D.1"), "{err}");
    assert!(err.lines().any(|l| l.starts_with('-') && l.contains("3")), "{err}");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn disputed_rows_do_not_fail_verification() {
    let dir = fixture_copy("disputed");
    let path = dir.join("D.1.json");
    let text = fs::read_to_string(&path).unwrap();
    let broken = text.replacen("\"mult\": 2", "\"disputed\": true,\n   \"mult\": 3,\n   \"note\": \"under review\"", 1);
    fs::write(&path, broken).unwrap();
    let o = run(&["--fixtures", path_str(&dir), "jacquet", "--parabolic", "4", "--z", "5/2", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("disputed"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["jacquet", "--parabolic", "9", "--z", "1"]).status.code(), Some(2));
    assert_eq!(run(&["jacquet", "--parabolic", "1", "--z", "one"]).status.code(), Some(2));
    assert_eq!(run(&["jacquet", "--parabolic", "1", "--z", "1", "--json", "--csv"]).status.code(), Some(2));
    assert_eq!(run(&["verify-thesis", "--only", "nonsense"]).status.code(), Some(2));
    let o = run(&["--fixtures", "/nonexistent/f4res", "jacquet", "--parabolic", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    // No fixture exists for this point, so verification is a configuration error.
    let o = run(&["jacquet", "--parabolic", "2", "--z", "5/2", "--verify"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    // Exponents at z0 = 1/3 are not integral.
    assert_eq!(run(&["images", "--parabolic", "4", "--z", "1/3"]).status.code(), Some(2));
}

#[test]
fn single_word_images_and_csv() {
    let o = run(&["images", "--parabolic", "4", "--z", "5/2", "--word", "w3w2w3w4w3w2w3w1w2w3w4", "--csv", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // words are printed in canonical reduced form
    assert_eq!(stdout(&o), "word,exp,rank\nw3w2w3w4w3w2w1w3w2w3w4,\"[1,-1,-1,-1]\",5\n");
}

#[test]
fn gk_labels_verify_for_p4() {
    let o = run(&["gk", "--parabolic", "4", "--z", "5/2", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("P4 at z0 = 5/2: order 1"), "{out}");
    assert!(out.contains("C_sph"));
}

#[test]
fn verify_thesis_runs_one_module() {
    let o = run(&["verify-thesis", "--only", "rootsys"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.ends_with("checks passed")), "{out}");
    let j = run(&["verify-thesis", "--only", "rootsys", "--json"]);
    assert!(stdout(&j).trim_start().starts_with('['));
}
