use std::process::{Command, Output};

use serde_json::Value;

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .env_remove("MODULI_TABLE_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = moduli(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn validate(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn intersect_examples() {
    let o = moduli(&["intersect", "--expr", "(3L - D - 1/2 R - 1/2 E)^3", "--prime", "5"]);
    assert_eq!(stdout(&o).trim(), "68");
    let o = moduli(&["intersect", "--expr", "prod(L,L,R)"]);
    assert_eq!(stdout(&o).trim(), "(7/144)*p^3 - (7/144)*p");
    let o = moduli(&["intersect", "--expr", "prod(L,L)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree must be 3"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(moduli(&["intersect", "--expr", "3X"]).status.code(), Some(2));
    assert_eq!(moduli(&["dim", "--group", "gamma1p", "--prime", "4", "--weight", "12"]).status.code(), Some(2));
    assert_eq!(moduli(&["trace", "--case", "9z"]).status.code(), Some(2));
    assert_eq!(moduli(&["bogus"]).status.code(), Some(2));
    assert_eq!(moduli(&["theta", "eval", "--tau", "0,1,0,1,0,1", "--char", "0,0;0,0"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let (v, code) = json(&["verify", "--suite", "tables"]);
    assert_eq!(code, 0);
    let ids = v["result"]["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("identity")).count();
    assert_eq!(ids, 5);
    validate(&v);
    let (v, code) = json(&["verify", "--suite", "all", "--prime-range", "5..37"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    validate(&v);
}

#[test]
fn star_identity_and_published_display() {
    let (v, code) = json(&["verify", "--suite", "star", "--identity", "star"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 3);
    let (v, code) = json(&["verify", "--suite", "star", "--use-paper-display"]);
    assert_eq!(code, 1);
    validate(&v);
    let failing: Vec<&Value> = v["result"]["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failing[0]["residual"], "kappa^2/34560 * (484*p^14 + 1200*p^13)");
}

#[test]
fn dim_chern_trace() {
    let (v, _) = json(&["dim", "--group", "gamma1p", "--prime", "5", "--weight", "12"]);
    assert_eq!(v["result"]["value"], "247");
    validate(&v);
    let (v, _) = json(&["chern", "--prime", "7"]);
    assert_eq!(v["result"]["c1c2"], "24");
    assert_eq!(v["result"]["pa"], "0");
    validate(&v);
    let (v, _) = json(&["chern", "--prime", "5"]);
    assert_eq!(v["result"]["c2L"], "79/3");
    assert_eq!(v["result"]["c1^3"], "-68");
    let (v, _) = json(&["chern", "--symbolic"]);
    validate(&v);
    let (v, _) = json(&["trace", "--case", "1c", "--prime", "5"]);
    validate(&v);
    // -(24^2/34560) * 120 * 5^10 (5^5 + 5^3 - 5^2 - 1)
    let want = -(24i64 * 24 * 120 * 5i64.pow(10) * (3125 + 125 - 25 - 1)) / 34560;
    assert_eq!(v["result"]["rows"][0]["k1_value"], want.to_string());
}

#[test]
fn table_override() {
    let dir = std::env::temp_dir().join(format!("moduli-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.txt");
    let text = moduli_core_table().replacen("L.L.D = 0", "L.L.D = 1", 1);
    std::fs::write(&path, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(["verify", "--suite", "tables"])
        .env("MODULI_TABLE_PATH", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = moduli(&["verify", "--suite", "tables", "--table", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = moduli(&["verify", "--suite", "tables", "--table", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn moduli_core_table() -> String {
    include_str!("../../core/data/tables.txt").to_string()
}

#[test]
fn theta_commands() {
    let (v, code) = json(&["theta", "eval", "--tau", "0,1,0,0,0,2", "--char", "1,1;1,1", "--eps", "1e-10"]);
    assert_eq!(code, 0);
    assert!(v["result"]["abs"].as_f64().unwrap() < 1e-10);
    validate(&v);
    let (v, code) = json(&["theta", "check", "--test", "modularity", "--samples", "5", "--tol", "1e-7", "--seed", "9"]);
    assert_eq!(code, 0);
    validate(&v);
    let (a, _) = json(&["theta", "check", "--test", "vanishing", "--samples", "4", "--tol", "1e-8", "--seed", "2"]);
    let (b, _) = json(&["theta", "check", "--test", "vanishing", "--samples", "4", "--tol", "1e-8", "--seed", "2"]);
    assert_eq!(a, b);
    let (_, code) = json(&["theta", "check", "--test", "omega", "--samples", "2", "--tol", "1e-30"]);
    assert_eq!(code, 1);
}
