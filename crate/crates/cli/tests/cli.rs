use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn divpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divpoint")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

const CONV4: &str = r#"{"points":[1,2,3,4],"dividons":[
  {"divider":[1,2],"divs":[[3,4],[]]},
  {"divider":[1,3],"divs":[[2],[4]]},
  {"divider":[1,4],"divs":[[2,3],[]]},
  {"divider":[2,3],"divs":[[1,4],[]]},
  {"divider":[2,4],"divs":[[1],[3]]},
  {"divider":[3,4],"divs":[[1,2],[]]}]}"#;

// every divider keeps both other points on one side
const XEMPTY4: &str = r#"{"points":[1,2,3,4],"dividons":[
  {"divider":[1,2],"divs":[[3,4],[]]},
  {"divider":[1,3],"divs":[[2,4],[]]},
  {"divider":[1,4],"divs":[[2,3],[]]},
  {"divider":[2,3],"divs":[[1,4],[]]},
  {"divider":[2,4],"divs":[[1,3],[]]},
  {"divider":[3,4],"divs":[[1,2],[]]}]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn classify_conv4() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "quad.json", CONV4);
    let o = divpoint(&["classify", "--input", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "Convex");
    let o = divpoint(&["classify", "--input", &f, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "Convex");
}

#[test]
fn laws_report_violations_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "x.json", XEMPTY4);
    let o = divpoint(&["laws", "--input", &f]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("unlawful"));
    assert_eq!(text.lines().count(), 9);
    let o = divpoint(&["laws", "--input", &f, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 8);
    let o = divpoint(&["validate", "--input", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("unlawful"));
}

#[test]
fn malformed_input_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"points":[1,2,3,4],"dividons":[]}"#);
    let o = divpoint(&["validate", "--input", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dividons"));
    let o = divpoint(&["validate", "--input", &path(&dir, "missing.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two_and_list_commands() {
    let o = divpoint(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("valid commands: validate, classify, convexity, iso, ingest"));
    assert_eq!(divpoint(&["gen-sat"]).status.code(), Some(2));
    assert_eq!(divpoint(&["solve", "--solver", "quantum"]).status.code(), Some(2));
}

#[test]
fn gen_sat_writes_dimacs_and_manifest() {
    let dir = TempDir::new().unwrap();
    let cnf = path(&dir, "inst.cnf");
    let man = path(&dir, "inst.json");
    let o = divpoint(&["gen-sat", "--n", "5", "--out", &cnf, "--manifest", &man]);
    assert!(o.status.success());
    let text = fs::read_to_string(&cnf).unwrap();
    assert_eq!(text.lines().next(), Some("p cnf 126 2142"));
    assert!(text.lines().any(|l| l == "1 2 7 22 57 0"));
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&man).unwrap()).unwrap();
    assert_eq!(m["m"], 9);
    assert_eq!(m["groups_a"], 126);
    assert_eq!(m["clauses"], 2142);
    // byte-identical on a second run
    let again = path(&dir, "again.cnf");
    divpoint(&["gen-sat", "--n", "5", "--out", &again]);
    assert_eq!(fs::read(&cnf).unwrap(), fs::read(&again).unwrap());

    let o = divpoint(&["gen-sat", "--n", "5", "--paper-setB-filter"]);
    assert!(stdout(&o).starts_with("p cnf 126 2021\n"));
    assert_eq!(divpoint(&["gen-sat", "--n", "7"]).status.code(), Some(1));
}

#[test]
fn solve_embedded_and_external() {
    let dir = TempDir::new().unwrap();
    let cnf = path(&dir, "inst.cnf");
    divpoint(&["gen-sat", "--n", "5", "--out", &cnf]);
    let o = divpoint(&["solve", "--input", &cnf, "--json", "--model"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "SAT");
    assert_eq!(v["verified"], true);
    assert_eq!(v["model"].as_array().unwrap().len(), 126);
    let o = divpoint(&["solve", "--n", "5", "--no-learning", "--xor"]);
    assert!(stdout(&o).contains("c model verified: true"));

    let unsat = write(&dir, "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let o = divpoint(&["solve", "--input", &unsat]);
    assert!(stdout(&o).starts_with("s UNSATISFIABLE"));
    let o = divpoint(&["solve", "--input", &unsat, "--conflict-budget", "0"]);
    assert!(o.status.success());

    let bad = write(&dir, "bad.cnf", "p cnf 1 1\n2 0\n");
    let o = divpoint(&["solve", "--input", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let script = write(&dir, "fake-solver.sh", "#!/bin/sh\necho 's UNSATISFIABLE'\nexit 20\n");
        fs::set_permissions(Path::new(&script), fs::Permissions::from_mode(0o755)).unwrap();
        let o = divpoint(&["solve", "--input", &cnf, "--solver", "external", "--external-cmd", &script]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("s UNSATISFIABLE"));
        assert_eq!(divpoint(&["solve", "--input", &cnf, "--solver", "external"]).status.code(), Some(1));
    }
}

#[test]
fn ingest_then_analyse() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        &dir,
        "pts.csv",
        "# a convex pentagon and a centre point\n1,0,10\n2,9,3\n3,6,-8\n4,-6,-8\n5,-9,3\n6,0,1\n",
    );
    let dps = path(&dir, "pts.json");
    let o = divpoint(&["ingest", "--input", &pts, "--out", &dps, "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["convex5"], serde_json::json!([1, 2, 3, 4, 5]));
    let o = divpoint(&["convexity", "--input", &dps]);
    assert_eq!(stdout(&o).trim(), "convexity 5 witness {1,2,3,4,5}");
    let o = divpoint(&["laws", "--input", &dps]);
    assert!(o.status.success());
    let o = divpoint(&["iso", "--a", &dps, "--b", &dps, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isomorphic"], true);

    let unit = path(&dir, "unit.json");
    assert!(divpoint(&["ingest", "--input", &pts, "--out", &unit, "--unit"]).status.success());
    let o = divpoint(&["validate", "--input", &unit]);
    assert_eq!(stdout(&o).trim(), "valid unit div point set on 6 points (lawful)");
    let o = divpoint(&["iso", "--a", &unit, "--b", &dps]);
    assert!(stdout(&o).starts_with("isomorphic"));

    let collinear = write(&dir, "line.csv", "1,0,0\n2,1,1\n3,2,2\n4,0,5\n");
    assert_eq!(divpoint(&["ingest", "--input", &collinear]).status.code(), Some(1));
}

#[test]
fn enumerations() {
    let o = divpoint(&["enumerate4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 64);
    assert_eq!(v["lawful"], 7);
    let a = divpoint(&["enumerate5", "--report", "--threads", "2"]);
    let b = divpoint(&["enumerate5", "--report", "--threads", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("total: 1048576"));
    assert!(text.contains("concave 4-subsets: 0:12 2:140 4:120"));
    assert_eq!(divpoint(&["enumerate5", "--threads", "0"]).status.code(), Some(1));
}
