use std::path::Path;
use std::process::{Command, Output};

use idforge::algebras::{AnyAlgebra, StructureConstantAlgebra};
use idforge::exactfield::PrimeField;
use idforge::freeops::OpSet;
use serde_json::Value;

fn idforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idforge")).args(args).env_remove("IDFORGE_THREADS").output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let o = idforge(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn read(path: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_algebras_of_the_right_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let ly4 = build(dir.path(), "ly4.json", &["--family", "ly", "--n", "4", "--field", "gfp:103:sqrt2=38"]);
    assert_eq!(read(&ly4)["dim"], 30);
    assert_eq!(read(&ly4)["field"], "gfp:103:sqrt2=38");
    let ljy3 = build(dir.path(), "ljy3.json", &["--family", "ljy", "--n", "3", "--field", "q-sqrt2"]);
    assert_eq!(read(&ljy3)["dim"], 7);
    let tensor = build(dir.path(), "t.json", &["--family", "ly4-tensor"]);
    assert_eq!(read(&tensor)["dim"], 30);
}

#[test]
fn trivial_and_malformed_builds_are_usage_errors() {
    assert_eq!(code(&idforge(&["build", "--family", "ly", "--n", "2"])), 2);
    assert_eq!(code(&idforge(&["build", "--family", "ly"])), 2);
    assert_eq!(code(&idforge(&["build", "--family", "ly4-tensor", "--n", "5"])), 2);
    assert_eq!(code(&idforge(&["build", "--family", "nope", "--n", "3"])), 2);
    assert_eq!(code(&idforge(&["build", "--family", "ly", "--n", "3", "--field", "gfp:103:sqrt2=37"])), 2);
    assert_eq!(code(&idforge(&["build", "--family", "ly", "--n", "3", "--field", "reals"])), 2);
}

#[test]
fn build_then_load_gives_identical_tables() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("a.json", vec!["--family", "ly", "--n", "3", "--field", "q-sqrt2"]),
        ("b.json", vec!["--family", "jordan-h", "--n", "3", "--field", "gfp:103"]),
    ] {
        let path = build(dir.path(), name, &args);
        let v = read(&path);
        let alg = AnyAlgebra::from_json(&v).unwrap();
        assert_eq!(alg.to_json(), v);
    }
}

#[test]
fn verify_reports_exit_status_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let ly4 = build(dir.path(), "ly4.json", &["--family", "ly", "--n", "4", "--field", "q-sqrt2"]);
    let o = idforge(&["verify", "--algebra", &ly4, "--identities", "LY", "--trials", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("holds").count(), 4);

    let ljy3 = build(dir.path(), "ljy3.json", &["--family", "ljy", "--n", "3", "--field", "q-sqrt2"]);
    let o = idforge(&["verify", "--algebra", &ljy3, "--identities", "LieJordan-linking", "--mode", "exhaustive"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAILS") && stdout(&o).contains("Basis"), "{}", stdout(&o));

    let o = idforge(&["verify", "--algebra", &ljy3, "--identities", "Malcev,FilippovH", "--trials", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = idforge(&["verify", "--algebra", &ljy3, "--identities", "NoSuchIdentity"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn zero_algebra_satisfies_the_ly_suite() {
    let dir = tempfile::tempdir().unwrap();
    let zero = StructureConstantAlgebra::zero("zero", PrimeField::new_with_sqrt2(103).unwrap(), OpSet::ly(), 4).unwrap();
    let path = dir.path().join("zero.json");
    std::fs::write(&path, zero.to_json().to_string()).unwrap();
    let o = idforge(&["verify", "--algebra", path.to_str().unwrap(), "--identities", "LY", "--mode", "exhaustive"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn find_reports_the_degree_three_identity() {
    let dir = tempfile::tempdir().unwrap();
    let ly4 = build(dir.path(), "ly4.json", &["--family", "ly", "--n", "4", "--field", "q-sqrt2"]);
    let out = dir.path().join("report.json");
    let o = idforge(&["find", "--algebra", &ly4, "--degree", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("rank reaches 5 after"), "{}", stdout(&o));
    assert!(stdout(&o).contains("nullspace dimension 1; 1 new generators"));
    let v = read(out.to_str().unwrap());
    assert_eq!(v["rank"], 5);
    assert_eq!(v["primes"], serde_json::json!([103]));
    assert_eq!(v["seeds"], serde_json::json!([1]));
    assert_eq!(v["new_generators"][0]["terms"], 6);
}

#[test]
fn find_uses_a_known_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let ly4 = build(dir.path(), "ly4.json", &["--family", "ly", "--n", "4", "--field", "q-sqrt2"]);
    let known = dir.path().join("known.json");
    let o = idforge(&["catalog", "--names", "LY3", "--out", known.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = idforge(&["find", "--algebra", &ly4, "--degree", "4", "--known", known.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("lifted module dimension 10"), "{}", stdout(&o));
    assert!(stdout(&o).contains("final module dimension 19"));

    // a binary-only prime algebra file cannot be searched at another prime
    let p = build(dir.path(), "p.json", &["--family", "ly", "--n", "4", "--field", "gfp:103:sqrt2=38"]);
    assert_eq!(code(&idforge(&["find", "--algebra", &p, "--degree", "3", "--prime", "100049"])), 2);
}

#[test]
fn find_exits_with_three_when_reconstruction_fails() {
    let dir = tempfile::tempdir().unwrap();
    let ljy3 = build(dir.path(), "ljy3.json", &["--family", "ljy", "--n", "3", "--field", "q-sqrt2"]);
    let o = idforge(&["find", "--algebra", &ljy3, "--degree", "5", "--prime", "103"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains("larger --prime"));
}

#[test]
fn rewritten_identities_account_for_ljy4_in_degree_four() {
    let dir = tempfile::tempdir().unwrap();
    let ljy4 = build(dir.path(), "ljy4.json", &["--family", "ljy", "--n", "4", "--field", "q-sqrt2"]);
    let o = idforge(&["find", "--algebra", &ljy4, "--degree", "4", "--prime", "100049", "--rewritten-ly"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("nullspace dimension 9; 0 new generators"), "{}", stdout(&o));
}

#[test]
fn threads_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let ly3 = build(dir.path(), "ly3.json", &["--family", "ly", "--n", "3"]);
    assert_eq!(code(&idforge(&["--threads", "0", "verify", "--algebra", &ly3, "--identities", "LY3"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_idforge"))
        .args(["verify", "--algebra", &ly3, "--identities", "LY3"])
        .env("IDFORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&idforge(&["--threads", "1", "verify", "--algebra", &ly3, "--identities", "LY3"])), 0);
}

#[test]
fn reproduce_needs_a_suite_and_writes_its_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("props");
    assert_eq!(code(&idforge(&["reproduce", "--out-dir", out.to_str().unwrap()])), 2);
    let o = idforge(&["reproduce", "--suite", "properties", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("criterion 10: PASS"));
    assert!(out.join("summary.txt").exists() && out.join("checks.json").exists());
}
