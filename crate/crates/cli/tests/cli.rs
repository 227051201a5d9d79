use std::process::{Command, Output};

fn tstruct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tstruct")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../core/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).expect("golden file")
}

#[test]
fn semisimple_table() {
    let o = tstruct(&["enumerate", "semisimple", "--blocks", "2", "--window", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
    let csv = tstruct(&["enumerate", "semisimple", "--blocks", "2", "--window", "0", "--format", "csv"]);
    assert_eq!(stdout(&csv), golden("semisimple_s2_w0.csv"));
}

#[test]
fn smc_rows() {
    let o = tstruct(&["enumerate", "smc", "--n", "1", "--window", "0"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = tstruct(&["enumerate", "smc", "--n", "2", "--window", "0..1"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let md = tstruct(&["enumerate", "tstructures", "--n", "2", "--window", "1", "--format", "md"]);
    assert_eq!(stdout(&md).lines().count(), 2 + 5);
}

#[test]
fn cap_is_enforced() {
    let o = tstruct(&["enumerate", "smc", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn induce_standard() {
    let o = tstruct(&["induce", "--n", "2", "--r", "1", "--corner", "0", "--quotient", r#"{"tails":[0],"extras":[]}"#]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"extras":[],"tails":[0]}"#);
}

#[test]
fn restrict_and_compatible() {
    let t7 = r#"{"tails":[-1],"extras":[{"l":1,"k":2,"d":0}]}"#;
    let o = tstruct(&["compatible", "--n", "2", "--r", "2", "--aisle", t7]);
    assert_eq!(stdout(&o).trim(), r#"{"compatible":false}"#);
    let o = tstruct(&["restrict", "--n", "2", "--r", "1", "--aisle", t7]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["corner"], -1);
    let o = tstruct(&["restrict", "--n", "2", "--r", "2", "--aisle", t7]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn find_idempotent_from_file() {
    let dir = std::env::temp_dir().join(format!("tstruct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t7.json");
    std::fs::write(&path, r#"{"tails":[-1],"extras":[{"l":1,"k":2,"d":0}]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let o = tstruct(&["find-idempotent", "--aisle", &arg]);
    assert_eq!(stdout(&o).trim(), r#"{"case":"1b","r":1}"#);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn orbit_shift() {
    let o = tstruct(&["orbit", "--t1", r#"{"tails":[0],"extras":[]}"#, "--t2", r#"{"tails":[-3],"extras":[]}"#]);
    assert_eq!(stdout(&o).trim(), r#"{"a":0,"b":3}"#);
}

#[test]
fn verify_suites() {
    for (suite, n) in [("ind-res", "2"), ("theorem-a_n", "3")] {
        let o = tstruct(&["verify", "--suite", suite, "--n", n]);
        assert!(o.status.success(), "{suite}");
    }
    let o = tstruct(&["classify-a2", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("type 8 R_2,9"));
}

#[test]
fn deterministic_and_seeded() {
    let args = ["verify", "--suite", "twist", "--n", "3", "--seed", "7"];
    let (a, b) = (tstruct(&args), tstruct(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v[0]["seed"], 7);
    let csv = tstruct(&["verify", "--suite", "twist", "--seed", "7", "--format", "csv"]);
    assert!(stdout(&csv).ends_with("# seed 7\n"));
}

#[test]
fn usage_errors() {
    assert_eq!(tstruct(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(tstruct(&["verify", "--window", "1..0"]).status.code(), Some(2));
    let o = tstruct(&["compatible", "--r", "1", "--aisle", "{\"tails\":[0],"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
    let o = tstruct(&["compatible", "--r", "1", "--aisle", r#"{"tails":[0],"extras":[{"l":0,"k":2,"d":"+inf"}]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(tstruct(&["compatible", "--aisle", r#"{"tails":[0],"extras":[]}"#]).status.code(), Some(2));
}
