use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use multisum::recurrence::{Recurrence, RecurrenceJson};
use multisum::tools::theta::ThetaJson;
use multisum::tools::ThetaOperator;
use multisum_cli::config::{Command as Cmd, Format, RunConfig, UnitMethod};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_multisum"));
    c.env_remove("MULTISUM_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)));
    (o.status.code().expect("exit code"), v)
}

fn recurrence_in(v: &Value) -> Recurrence {
    let j: RecurrenceJson = serde_json::from_value(strip(v, &["terms", "text"])).expect("recurrence json");
    Recurrence::from_json(&j).expect("valid recurrence")
}

fn theta_in(v: &Value) -> ThetaOperator {
    let j: ThetaJson = serde_json::from_value(strip(v, &["text"])).expect("theta json");
    ThetaOperator::from_json(&j).expect("valid operator")
}

fn strip(v: &Value, keys: &[&str]) -> Value {
    let mut v = v.clone();
    for k in keys {
        v.as_object_mut().expect("object").remove(*k);
    }
    v
}

#[test]
fn derive_two_parts_symbolic_with_ode() {
    let (code, v) = json_of(&["derive", "--N", "2", "--symbolic", "--ode"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let r = recurrence_in(&v["result"]["recurrence"]);
    let expected = Recurrence::parse("n; -(2*n - 1)*(a + b); (n - 1)*(a - b)^2").unwrap();
    assert_eq!(r.normalized().unwrap(), expected.normalized().unwrap());
    let op = theta_in(&v["result"]["theta"]);
    assert_eq!(op.theta_degree(), 1);
    assert_eq!(op.to_recurrence().unwrap().normalized().unwrap(), expected.normalized().unwrap());
}

#[test]
fn omega_sequence() {
    let o = run(&["seq", "--N", "3", "--weights", "1,w,w2", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1, 0, 0, 12, 0, 0, 420, 0, 0, 18480, 0, 0, 900900");
    let o = run(&["--format", "json", "seq", "--N", "3", "--weights", "1,w,w2", "--n-max", "3"]);
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3], serde_json::json!({ "n": 3, "value": "12" }));
}

#[test]
fn all_ones_row_ten_verifies() {
    let o = run(&["verify", "--table1", "--N", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("ok:"));
}

#[test]
fn wrong_recurrence_exits_one() {
    let o = run(&["verify", "--N", "2", "--weights", "1,1", "--recurrence", "n; -(4*n - 1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
    let (code, v) = json_of(&["verify", "--N", "2", "--weights", "1,1", "--recurrence", "n; -(4*n - 1)"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["seq", "--N", "3", "--weights", "1,zz,3"],
        vec!["seq", "--N", "3", "--weights", "1,2"],
        vec!["seq", "--N", "3", "--weights", "1,2,3", "--symbolic"],
        vec!["derive"],
        vec!["pf", "--weights", "1,w,3"],
        vec!["power-derive", "--k", "3", "--a", "1"],
        vec!["nonsense"],
        vec!["seq", "--N", "2", "--n-max", "bad"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["seq", "--N", "3", "--weights", "1,zz,3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed weight \"zz\""));
}

#[test]
fn budget_is_enforced() {
    let o = run(&["--budget", "10", "seq", "--N", "4", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--format", "json", "derive", "--N", "3", "--weights", "1,2,5", "--ode"],
        vec!["--format", "latex", "unit-rec", "--N", "5", "--ode"],
        vec!["--format", "json", "power-derive", "--k", "3", "--a", "2", "--b", "-1/3"],
    ] {
        let a = run(&args);
        let b = bin().args(&args).env("MULTISUM_THREADS", "1").output().unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn latex_layout() {
    let o = run(&["--format", "latex", "unit-rec", "--N", "3"]);
    let s = stdout(&o);
    assert!(s.starts_with("n^{2} a_{n}"), "{s}");
    assert!(s.contains("9(n - 1)^{2}"), "{s}");
    assert!(s.trim_end().ends_with("= 0"), "{s}");
}

#[test]
fn unit_methods_agree() {
    for n in ["3", "6"] {
        let a = stdout(&run(&["unit-rec", "--N", n]));
        let b = stdout(&run(&["unit-rec", "--N", n, "--method", "polys"]));
        assert_eq!(a, b);
    }
}

#[test]
fn guess_recovers_and_cross_validates() {
    let (code, v) = json_of(&["guess", "--N", "3", "--n-max", "34"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["validated"], true);
    assert_eq!(v["result"]["validated_to"], 69);
    let r = recurrence_in(&v["result"]["recurrence"]);
    let table = multisum::unit::unit_recurrence(3).unwrap();
    assert_eq!(r.normalized().unwrap(), table.normalized().unwrap());
}

#[test]
fn config_file_reproduces_run() {
    let args = ["--format", "json", "ode", "--N", "2", "--weights", "1,1", "--n-max", "15"];
    let direct = run(&args);
    let mut dump = vec!["--dump-config"];
    dump.extend_from_slice(&args);
    let cfg_text = stdout(&run(&dump));
    let cfg: RunConfig = serde_json::from_str(&cfg_text).unwrap();
    assert_eq!(cfg.command, Cmd::Ode);
    assert_eq!(cfg.format, Format::Json);
    assert_eq!(cfg.n_max, 15);
    let path: PathBuf = std::env::temp_dir().join(format!("multisum-cfg-{}.json", std::process::id()));
    std::fs::write(&path, &cfg_text).unwrap();
    let via = run(&["--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(direct.stdout, via.stdout);
    assert_eq!(via.status.code(), Some(0));
}

#[test]
fn defaults_are_stable() {
    let c: RunConfig = serde_json::from_str(r#"{"command":"seq"}"#).unwrap();
    assert_eq!(c, RunConfig::new(Cmd::Seq));
    assert_eq!((c.n_max, c.max_order, c.max_degree, c.k), (20, 4, 4, 2));
    assert_eq!((c.budget, c.tolerance, c.format, c.method), (10_000_000, 1e-9, Format::Text, UnitMethod::Closed));
    assert!(serde_json::from_str::<RunConfig>(r#"{"command":"seq","bogus":1}"#).is_err());
}

#[test]
fn reduce_default_lowers_theta_degree() {
    let (code, v) = json_of(&["reduce", "--ode"]);
    assert_eq!(code, 0);
    let r = recurrence_in(&v["result"]["recurrence"]);
    assert_eq!(r.order(), 6);
    assert_eq!(v["result"]["theta"]["theta_degree"], 2);
    let expected = multisum::tools::elliptic::three_weight_recurrence();
    let reduced = multisum::tools::shift_reduce(
        &expected,
        &multisum::tools::elliptic::reduction_multipliers(),
        &multisum::tools::elliptic::reduction_divisor(),
    )
    .unwrap();
    assert_eq!(r.normalized().unwrap(), reduced.normalized().unwrap());
}

#[test]
fn pf_reports_points() {
    let (code, v) = json_of(&["pf", "--weights", "1,16,64"]);
    assert_eq!(code, 0);
    let pts: Vec<f64> = v["result"]["singularities"]["singular_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z[0].as_f64().unwrap())
        .collect();
    let want = [1.0 / 169.0, 1.0 / 121.0, 1.0 / 25.0, 1.0 / 9.0];
    assert_eq!(pts.len(), 4);
    for (p, w) in pts.iter().zip(want) {
        assert!(((p - w) / w).abs() < 1e-9, "{p} vs {w}");
    }
    assert_eq!(v["result"]["theta"]["theta_degree"], 2);
}
