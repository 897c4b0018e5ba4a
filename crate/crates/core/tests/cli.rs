use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use coorbit2d::io::{write_group_spec, Report};
use coorbit2d::{Family, GroupSpec, Mat2};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coorbit2d"))
        .current_dir(dir)
        .args(args)
        .env("COORBIT2D_THREADS", "2")
        .output()
        .unwrap()
}

fn report(out: &Output) -> Report {
    Report::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_spec(dir: &Path, name: &str, spec: &GroupSpec) {
    write_group_spec(dir.join(name), spec).unwrap();
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn classify_identity_diagonal_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("diag.json"), r#"{"family":"diagonal"}"#).unwrap();
    let out = run_in(dir.path(), &["classify", "diag.json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let cf = r.get("result", "canonical").unwrap();
    assert_eq!(cf.get("family").unwrap().as_str(), Some("diagonal"));
    assert_eq!(cf.get("phi").unwrap().as_f64(), Some(0.0));
    assert_eq!(cf.get("s").unwrap().as_f64(), Some(0.0));
    assert_eq!(r.get("result", "components").unwrap().as_f64(), Some(4.0));
    assert_eq!(r.without_timing().to_json(), golden("classify_diag.json"));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    write_spec(dir.path(), "sh.json", &GroupSpec::new(Family::Shearlet { c: 0.5 }, Mat2::rotation(0.3)).unwrap());
    let a = report(&run_in(dir.path(), &["covariance", "sh.json", "--n", "16"]));
    let b = report(&run_in(dir.path(), &["covariance", "sh.json", "--n", "16"]));
    assert_eq!(a.without_timing(), b.without_timing());
    assert_eq!(a.get("result", "within_tolerance").unwrap().as_bool(), Some(true));
}

#[test]
fn similitude_conjugates_are_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    write_spec(dir.path(), "sim1.json", &GroupSpec::new(Family::Similitude, Mat2::new(0.3, -1.2, 0.8, 0.4)).unwrap());
    write_spec(dir.path(), "sim2.json", &GroupSpec::new(Family::Similitude, Mat2::new(2.0, 0.1, 1.5, -0.7)).unwrap());
    let out = run_in(dir.path(), &["equiv", "sim1.json", "sim2.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out).get("result", "equivalent").unwrap().as_bool(), Some(true));
}

#[test]
fn inequivalent_groups_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    write_spec(dir.path(), "a.json", &GroupSpec::shearlet(1.0).unwrap());
    write_spec(dir.path(), "b.json", &GroupSpec::shearlet(1.001).unwrap());
    let out = run_in(dir.path(), &["equiv", "a.json", "b.json"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).get("result", "equivalent").unwrap().as_bool(), Some(false));
}

#[test]
fn swap_is_a_diagonal_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("diag.json"), r#"{"family":"diagonal"}"#).unwrap();
    let out = run_in(dir.path(), &["symmetry", "diag.json", "--matrix", "0,1,1,0"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    for key in ["normalizer", "coorbit_symmetry", "orbit_symmetry"] {
        assert_eq!(r.get("result", key).unwrap().as_bool(), Some(true), "{key}");
    }
    let out = run_in(dir.path(), &["symmetry", "diag.json", "--matrix", "1,-1,1,1"]);
    let r = report(&out);
    assert_eq!(r.get("result", "orbit_symmetry").unwrap().as_bool(), Some(false));
}

#[test]
fn signal_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sim.json"), r#"{"family":"similitude"}"#).unwrap();
    let out = run_in(
        dir.path(),
        &["gen-signal", "bump", "f.bin", "--n", "64", "--extent", "16", "--center", "0.9,-0.4", "--sigma", "0.15"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_in(dir.path(), &["invert", "sim.json", "f.bin", "--reconstruction", "g.csv"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let err = report(&out).get("result", "relative_error").unwrap().as_f64().unwrap();
    assert!(err < 5e-2, "{err}");
    assert!(dir.path().join("g.csv").exists());
    let out = run_in(dir.path(), &["invert", "sim.json", "f.bin", "--max-error", "1e-12"]);
    assert_eq!(code(&out), 4);
    let out = run_in(dir.path(), &["norm", "sim.json", "g.csv", "--p", "inf", "--out", "norm.json"]);
    assert_eq!(code(&out), 0);
    let r = Report::parse(&fs::read_to_string(dir.path().join("norm.json")).unwrap()).unwrap();
    assert!(r.get("result", "norm").unwrap().as_f64().unwrap() > 0.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.json"), r#"{"family":"shearlet"}"#).unwrap();
    fs::write(d.join("junk.bin"), b"not a signal").unwrap();
    fs::write(d.join("sim.json"), r#"{"family":"similitude"}"#).unwrap();
    assert_eq!(code(&run_in(d, &["--version"])), 0);
    assert_eq!(code(&run_in(d, &[])), 1);
    assert_eq!(code(&run_in(d, &["classify"])), 1);
    assert_eq!(code(&run_in(d, &["symmetry", "sim.json", "--matrix", "1,2,3"])), 1);
    assert_eq!(code(&run_in(d, &["symmetry", "sim.json", "--matrix", "1,2,2,4"])), 1);
    assert_eq!(code(&run_in(d, &["classify", "missing.json"])), 2);
    assert_eq!(code(&run_in(d, &["classify", "bad.json"])), 2);
    assert_eq!(code(&run_in(d, &["norm", "sim.json", "junk.bin"])), 2);
    assert_eq!(code(&run_in(d, &["gen-signal", "nonsense", "x.bin"])), 1);
    assert_eq!(code(&run_in(d, &["calderon", "sim.json", "--log-range", "0.5,2", "--log-count", "16"])), 4);
}
