use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use herglotz_core::asymptotics::sum_rule_at_zero;
use herglotz_core::boundary::LimitSchedule;
use herglotz_core::bounds::{metamaterial_bound, BandSpec};
use herglotz_core::circuits::{admittance_energy, Circuit, EnergySource};
use herglotz_core::herglotz::HerglotzFn;
use herglotz_core::passive_approx::{solve, ApproxProblem, SolverConfig};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herglotz-kit")).args(args).output().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "herglotz-kit/1");
    v
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_point_mass_rep() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    fs::write(&rep, r#"{"a":0.3,"b":0,"mu":{"point_masses":[{"xi":3,"m":1}],"densities":[],"lebesgue":0}}"#).unwrap();
    let v = json_ok(&["eval", "--rep", path(&rep), "--z", "0+1i"]);
    let w = &v["result"]["value"];
    assert!((w[0].as_f64().unwrap() - 0.3).abs() < 1e-14);
    assert!((w[1].as_f64().unwrap() - 0.1).abs() < 1e-14);
}

#[test]
fn eval_line_csv() {
    let out = run(&["eval", "--fn", "tan", "--x-from", "-1", "--x-to", "1", "--count", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,re,im");
    assert_eq!(lines.len(), 6);
    let f = HerglotzFn::Tan.eval(herglotz_core::Complex64::new(0.5, 1e-3)).unwrap();
    assert_eq!(lines[4], format!("0.5,{},{}", f.re, f.im));
}

#[test]
fn metamaterial_bound_matches_library() {
    let v = json_ok(&["bound", "metamaterial", "--eps-t", "-2", "--eps-inf", "1", "--B", "0.1"]);
    let got = v["result"]["bound_value"].as_f64().unwrap();
    assert_eq!(got, metamaterial_bound(-2.0, 1.0, 0.1).unwrap());
    assert!((got - 1.0 / 7.0).abs() < 1e-15);
}

#[test]
fn other_bounds() {
    let v = json_ok(&["bound", "resistance", "--C", "0.5"]);
    assert!((v["result"]["bound_value"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-14);
    let v = json_ok(&["bound", "amplitude", "--b1", "1", "--b1-0", "0.5", "--omega-length", "2"]);
    assert!(v["result"]["bound_value"].as_f64().unwrap() > 0.0);
    let v = json_ok(&["bound", "bandwidth", "--omega1", "1", "--omega2", "2", "--C", "1"]);
    assert!(v["result"]["bound_value"].as_f64().unwrap() > 0.0);
}

#[test]
fn tan_sum_rule() {
    let v = json_ok(&["sumrule", "--fn", "tan", "--p", "2"]);
    assert_eq!(v["result"]["converged"], true);
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 1e-5);
    let direct = sum_rule_at_zero(&HerglotzFn::Tan, 2, &LimitSchedule::default()).unwrap();
    assert_eq!(value, direct.value);
    assert!(v["provenance"]["schedule"]["y_values"].is_array());
}

#[test]
fn output_is_deterministic() {
    let args = ["sumrule", "--fn", "tan", "--p", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let out = run(&["bound", "metamaterial", "--eps-t", "2", "--eps-inf", "1", "--B", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["eval", "--rep", "/nonexistent/rep.json", "--z", "i"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sumrule", "--fn", "tan", "--p", "2", "--y-values", "0.5", "--eps-values", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invert_and_expand() {
    let v = json_ok(&["invert", "--fn", "tan", "--point", "1.5707963267948966"]);
    assert!((v["result"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let v = json_ok(&["expand", "--fn", "h-delta", "--delta", "1", "--order", "1"]);
    assert!(v["result"]["coefficients"].is_array());
}

#[test]
fn approx_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let problem = ApproxProblem::metamaterial(-2.0, BandSpec::new(1.0, 0.1).unwrap(), 12, 4, 60).unwrap();
    let (pin, pout) = (dir.path().join("problem.json"), dir.path().join("sol.json"));
    fs::write(&pin, serde_json::to_string(&problem).unwrap()).unwrap();
    let out = run(&["approx", "--problem", path(&pin), "--out", path(&pout), "--p", "inf", "--kgon", "64", "--tol", "1e-8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&pout).unwrap()).unwrap();
    assert_eq!(v["schema"], "herglotz-kit/1");
    let direct = solve(&problem, &SolverConfig::default()).unwrap();
    assert_eq!(v["result"]["solution"]["achieved_error"].as_f64().unwrap(), direct.achieved_error);
    let bound = v["result"]["bound"]["bound_value"].as_f64().unwrap();
    assert!(direct.achieved_error >= bound - 1e-9);
}

#[test]
fn circuit_energy_and_impedance() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = Circuit::shunt_c(1.0, Circuit::series_rl(0.5, 1.0).unwrap()).unwrap();
    let cpath = dir.path().join("c.json");
    fs::write(&cpath, serde_json::to_string(&circuit).unwrap()).unwrap();
    let dt = 1e-3;
    let u: Vec<f64> = (0..=1000).map(|j| (std::f64::consts::PI * j as f64 * dt).sin()).collect();
    let mut csv = String::from("t,u\n");
    for (j, v) in u.iter().enumerate() {
        csv += &format!("{},{}\n", j as f64 * dt, v);
    }
    let upath = dir.path().join("u.csv");
    fs::write(&upath, csv).unwrap();
    let v = json_ok(&["circuit", "energy", "--circuit", path(&cpath), "--input", path(&upath), "--t-end", "1.5"]);
    let direct = admittance_energy(&u, EnergySource::Circuit(&circuit), 1.5, dt).unwrap();
    let got = v["result"]["energy"].as_f64().unwrap();
    assert!((got - direct.energy).abs() <= 1e-12 * direct.energy.abs());
    assert!(got >= 0.0);

    let out = run(&["circuit", "impedance", "--circuit", path(&cpath), "--omega-from", "0", "--omega-to", "2", "--count", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("omega,re,im"));
    let z = circuit.frequency_response(1.0);
    assert_eq!(text.lines().nth(2).unwrap(), format!("1,{},{}", z.re, z.im));
}
