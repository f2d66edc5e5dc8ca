use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use sigmaforge::cli::{run_with, Output};

fn run(args: &[&str]) -> Output {
    let mut argv = vec!["sigmaforge"];
    argv.extend_from_slice(args);
    run_with(argv, None)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    let v = serde_json::from_str(out.stdout.trim()).unwrap_or_else(|e| {
        panic!("not JSON ({}): {:?} {:?}", e, out.stdout, out.stderr);
    });
    (out.code, v)
}

fn result(args: &[&str]) -> Value {
    let (code, v) = json(args);
    assert_eq!(code, 0, "{}", v);
    assert_eq!(v["ok"], true);
    assert_eq!(v["schema"], "1");
    v["result"].clone()
}

fn error_name(args: &[&str]) -> (i32, String) {
    let (code, v) = json(args);
    assert_eq!(v["ok"], false);
    assert!(v["result"].is_null());
    (code, v["error"]["name"].as_str().unwrap().to_string())
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("sigmaforge-{}-{}", std::process::id(), name));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn eval_sorts_and_values() {
    let r = result(&["--residue", "shiftQ", "eval", "s(u0+1)"]);
    assert_eq!(r, serde_json::json!({"sort": "k", "value": "u1+1"}));
    let r = result(&["--group", "Laurent-omega", "eval", "2g^2 - 3g + 1"]);
    assert_eq!(r["sort"], "gamma");
    assert_eq!(r["value"], "2g^2-3g+1");
    let r = result(&["--group", "Z-double", "eval", "T^(s(3))"]);
    assert_eq!(r["value"], "T^6");
    let r = result(&["eval", "v(3*T^2 + T^5) = 2"]);
    assert_eq!(r, serde_json::json!({"sort": "bool", "value": "true"}));
    let r = result(&["eval", "--sort", "vf", "3"]);
    assert_eq!(r["sort"], "vf");
}

#[test]
fn taylor_shift_complexity() {
    let r = result(&[
        "taylor",
        "--poly",
        "X*s(X)^2 + 3",
        "--index",
        "0,1",
        "--at",
        "2",
    ]);
    assert_eq!(r[0]["poly"], "2*X*s(X)");
    assert_eq!(r[0]["value"], "8");
    let r = result(&["shift", "--poly", "s(X)^2 + s^2(X)"]);
    assert_eq!(r["m"], 1);
    assert_eq!(r["poly"], "s(X) + X^2");
    let r = result(&[
        "--residue",
        "shiftQ-inv",
        "shift",
        "--poly",
        "u0*s(X)",
        "--coeff",
        "-1",
    ]);
    assert_eq!(r["poly"], "u_{-1}*s(X)");
    assert_eq!(
        result(&["complexity", "--poly", "X*s(X)^2 + 3"]),
        "(1, 2, 3)"
    );
}

#[test]
fn configuration_and_lift() {
    let common = ["--group", "Zhalf-double"];
    let mut args = common.to_vec();
    args.extend(["config", "--poly", "s(X) - 1 - T*X", "--at", "1"]);
    let r = result(&args);
    assert_eq!(r["i"], 1);
    assert_eq!(r["gamma"], "1/2");

    let mut args = common.to_vec();
    args.extend([
        "--trace",
        "lift",
        "--poly",
        "s(X) - 1 - T*X",
        "--at",
        "1",
        "--target",
        "15/16",
    ]);
    let (code, v) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["root"], "1 + T^(1/2) + T^(3/4) + T^(7/8)");
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    assert_eq!(v["trace"][0]["z"], "1");

    let mut args = common.to_vec();
    args.extend([
        "lift",
        "--poly",
        "s(X) - 1 - T*X",
        "--at",
        "1",
        "--target",
        "7/4",
        "--residual",
    ]);
    assert_eq!(
        result(&args)["values"],
        serde_json::json!(["1", "3/2", "7/4"])
    );

    let mut args = common.to_vec();
    args.extend([
        "lift",
        "--poly",
        "s(X) - 1 - T*X",
        "--at",
        "1",
        "--target",
        "1",
        "--max-iter",
        "5",
    ]);
    assert_eq!(error_name(&args), (1, "NonTermination".to_string()));

    assert_eq!(
        error_name(&["lift", "--poly", "3", "--at", "1"]),
        (1, "ConstantInput".to_string())
    );
}

#[test]
fn leading_terms() {
    assert_eq!(
        result(&["rv", "--at", "3*T^2 + 5*T^3"]),
        serde_json::json!({"ac": "3", "v": "2"})
    );
    assert_eq!(run(&["rv", "--at", "3*T^2 + 5*T^3"]).stdout, "⟨3 ; 2⟩\n");
    assert_eq!(
        result(&["oplus", "rv(1, 0)", "⟨2 ; 1⟩"]),
        serde_json::json!({"ac": "1", "v": "0"})
    );
    assert_eq!(
        result(&["oplus", "rv(0, 0)"]),
        serde_json::json!({"ac": "0", "v": "oo"})
    );
    assert_eq!(
        error_name(&["oplus", "rv(1, 0)", "rv(-1, 0)"]),
        (1, "NotWellDefined".to_string())
    );
}

#[test]
fn residue_field_commands() {
    assert_eq!(result(&["linsolve", "2", "-1"])["z"], "-1");
    assert_eq!(
        error_name(&["linsolve", "1", "-1"]),
        (1, "NoSolutionFound".to_string())
    );
    let r = result(&[
        "--residue",
        "shiftQ",
        "lambda",
        "--xs",
        "u1",
        "--y",
        "u1*u2",
    ]);
    assert_eq!(r, serde_json::json!({"lambda": ["u1"], "reason": null}));
    let r = result(&[
        "--residue",
        "shiftQ",
        "lambda",
        "--xs",
        "u1, u2",
        "--y",
        "1",
    ]);
    assert_eq!(r["reason"], "dependent-xs");
    let r = result(&["--residue", "shiftQ", "lambda", "--xs", "1", "--y", "u0"]);
    assert_eq!(
        r,
        serde_json::json!({"lambda": ["0"], "reason": "y-not-in-span"})
    );
}

#[test]
fn density_pc_regular() {
    let r = result(&[
        "--group",
        "Zhalf-double",
        "density",
        "--at",
        "T",
        "--gamma",
        "3",
    ]);
    assert_eq!(r["preimage"], "T^(1/2)");
    let r = result(&["density", "--at", "1", "--eps", "T", "--target", "3"]);
    assert_eq!(r["solution"], "1 + T + T^2");
    assert_eq!(
        error_name(&["density", "--at", "1"]),
        (2, "ConfigError".to_string())
    );

    let r = result(&[
        "pc",
        "--term",
        "0",
        "--term",
        "T",
        "--term",
        "T+T^2",
        "--term",
        "T+T^2+T^3",
        "--poly",
        "X",
        "--limit",
        "T+T^2+T^3",
    ]);
    assert_eq!(r["radii"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(r["pseudo_cauchy"], "yes");
    assert_eq!(r["limits"], serde_json::json!(["yes"]));
    assert_eq!(r["polys"][0]["increasing"], "no");
    assert_eq!(
        error_name(&["pc", "--term", "0", "--term", "T"]),
        (1, "TooShort".to_string())
    );

    assert_eq!(
        result(&["regular", "--poly", "X - T", "--at", "T"]),
        serde_json::json!({"regular": "no"})
    );
    let r = result(&[
        "--residue",
        "shiftQ",
        "regular",
        "--poly",
        "u0*X + u1",
        "--fresh",
        "0",
    ]);
    assert_eq!(r, serde_json::json!({"element": "u2", "regular": "yes"}));
}

#[test]
fn exit_codes() {
    assert_eq!(error_name(&["eval", "s(X"]), (2, "SyntaxError".to_string()));
    assert_eq!(
        error_name(&["eval", "forall X"]),
        (2, "SyntaxError".to_string())
    );
    assert_eq!(
        error_name(&["complexity", "--poly", "u0 < 1"]),
        (2, "SortError".to_string())
    );
    assert_eq!(
        error_name(&["--group", "Z-double", "eval", "T^(1/2)"]),
        (1, "NotInInstance".to_string())
    );
    assert_eq!(
        error_name(&["--residue", "Q-rat", "eval", "1"]),
        (2, "ConfigError".to_string())
    );
    let out = run(&["nosuch"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("nosuch"));
    let out = run(&["eval", "s(X"]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.starts_with("error: SyntaxError"),
        "{}",
        out.stderr
    );
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let path = temp_file(
        "session.json",
        r#"{"residue": "shiftQ", "group": "Z-double", "output": "json"}"#,
    );
    let p = path.to_str().unwrap();
    let out = run_with(["sigmaforge", "eval", "s(u0) * T^(s(1))"], Some(p));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["value"], "u1*T^2");

    // flags win over the file
    let out = run_with(
        [
            "sigmaforge",
            "--output",
            "text",
            "--group",
            "Z-trivial",
            "eval",
            "T^(s(1))",
        ],
        Some(p),
    );
    assert_eq!(out.stdout, "T\n");

    let out = run_with(["sigmaforge", "--config", p, "eval", "u3"], None);
    assert!(out.stdout.contains("\"value\":\"u3\""));

    let bad = temp_file("bad.json", r#"{"residu": "shiftQ"}"#);
    let out = run_with(["sigmaforge", "eval", "1"], bad.to_str());
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("ConfigError"));
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(bad);
}

#[test]
fn binary_reads_environment() {
    let path = temp_file("env.json", r#"{"group": "Zhalf-double", "trace": true}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_sigmaforge"))
        .args([
            "--json",
            "lift",
            "--poly",
            "s(X) - 1 - T*X",
            "--at",
            "1",
            "--target",
            "3/4",
        ])
        .env("SIGMAFORGE_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["root"], "1 + T^(1/2)");
    assert_eq!(v["trace"].as_array().unwrap().len(), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_sigmaforge"))
        .args(["eval", "s(X"])
        .env_remove("SIGMAFORGE_CONFIG")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(path);
}
