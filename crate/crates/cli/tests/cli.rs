// SPDX-License-Identifier: Apache-2.0

use serde_json::Value;
use std::io::Write;
use std::process::Command;

fn ncdomain(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncdomain"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn last_json(stdout: &str) -> Value {
    let line = stdout.lines().last().expect("output");
    serde_json::from_str(line).expect("JSON line")
}

fn point_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn scalar_point(vals: &[&str]) -> String {
    let mats: Vec<String> = vals
        .iter()
        .map(|v| format!(r#"{{"rows":1,"cols":1,"entries":[["{v}"]]}}"#))
        .collect();
    format!(r#"{{"n":1,"g":{},"X":[{}]}}"#, vals.len(), mats.join(","))
}

const SINGULAR_X1: &str = r#"{"n":2,"g":1,"X":[{"rows":2,"cols":2,"entries":[[1,2],[2,4]]}]}"#;

#[test]
fn parse_round_trip() {
    let (code, out) = ncdomain(&["parse", "--expr", "inv(x4 - x3*inv(x1)*x2)"]);
    assert_eq!(code, 0);
    let v = last_json(&out);
    assert_eq!(v["expr"], "(x4 - x3*x1^-1*x2)^-1");
    assert_eq!(v["g"], 4);
    assert_eq!(v["has_inverse"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncdomain(&["parse", "--expr", "x1 +"]).0, 2);
    assert_eq!(ncdomain(&["eval", "--expr", "x1"]).0, 2);
    assert_eq!(ncdomain(&["frobnicate"]).0, 2);
    assert_eq!(ncdomain(&["eval", "--expr", "x2", "--point", SINGULAR_X1]).0, 2);
    assert_eq!(ncdomain(&["--help"]).0, 0);
}

#[test]
fn eval_undefined_exits_1() {
    let f = point_file(SINGULAR_X1);
    let (code, out) = ncdomain(&["eval", "--expr", "x1^-1", "--point", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let v = last_json(&out);
    assert_eq!(v["defined"], false);
    assert_eq!(v["message"], "undefined at subexpression x1^-1");
}

#[test]
fn eval_defined() {
    let x = r#"{"n":2,"g":2,"X":[{"rows":2,"cols":2,"entries":[[0,1],[0,0]]},{"rows":2,"cols":2,"entries":[[1,0],[0,2]]}]}"#;
    let (code, out) = ncdomain(&["eval", "--expr", "(1 - x1)*x2*(1 - x1)^-1", "--point", x]);
    assert_eq!(code, 0);
    let v = last_json(&out);
    assert_eq!(v["value"]["entries"], serde_json::json!([["1", "-1"], ["0", "2"]]));
}

#[test]
fn domain_follows_block_determinant() {
    let expr = "inv(x4 - x3*inv(x1)*x2)";
    let (code, out) = ncdomain(&["domain", "--expr", expr, "--point", &scalar_point(&["0", "1", "1", "0"])]);
    assert_eq!(code, 0);
    assert!(out.starts_with("in-domain: true"));
    assert_eq!(last_json(&out)["base_point"], serde_json::json!(["1", "0", "0", "1"]));
    let (code, out) = ncdomain(&["domain", "--expr", expr, "--point", &scalar_point(&["2", "1", "4", "2"])]);
    assert_eq!(code, 1);
    assert!(out.starts_with("in-domain: false"));
}

#[test]
fn witness_where_representative_fails() {
    let expr = "inv(x4 - x3*inv(x1)*x2)";
    let (code, out) = ncdomain(&["witness", "--expr", expr, "--point", &scalar_point(&["0", "1", "1", "0"])]);
    assert_eq!(code, 0);
    let v = last_json(&out);
    assert_eq!(v["representative_defined"], false);
    assert_eq!(v["matches_realization"], true);
    assert!(v["witness"].as_str().unwrap().contains("^-1"));
}

#[test]
fn realize_series_shift() {
    let e = "(1 - x1)*x2*(1 - x1)^-1";
    let (code, out) = ncdomain(&["realize", "--expr", e]);
    assert_eq!(code, 0);
    assert_eq!(last_json(&out)["size"], 3);
    let (_, out) = ncdomain(&["series", "--expr", e, "--max-len", "2"]);
    let coeffs = last_json(&out)["coefficients"].clone();
    assert!(coeffs.as_array().unwrap().contains(&serde_json::json!({"word": "x2*x1", "coeff": "1"})));
    assert!(coeffs.as_array().unwrap().contains(&serde_json::json!({"word": "x1*x2", "coeff": "-1"})));
    let (_, out) = ncdomain(&["shift", "--expr", e, "--var", "2"]);
    assert_eq!(last_json(&out)["size"], 1);
    let (code, _) = ncdomain(&["realize", "--expr", "x1^-1", "--at", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn equal_verdicts() {
    let (code, out) = ncdomain(&["equal", "--expr", "x1^-1*x2^-1", "--rhs", "(x2*x1)^-1"]);
    assert_eq!(code, 0);
    assert_eq!(last_json(&out)["verdict"], "equal");
    let (code, out) = ncdomain(&["equal", "--expr", "x1*x2", "--rhs", "x2*x1"]);
    assert_eq!(code, 1);
    assert_eq!(last_json(&out)["verdict"], "unequal");
}

#[test]
fn edom_and_factor() {
    let e = "(1 - x1)*x2*(1 - x1)^-1";
    let (code, out) = ncdomain(&["edom", "--expr", e, "--point", &scalar_point(&["1", "1"]), "--ampliations", "2"]);
    assert_eq!(code, 1);
    let v = last_json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["ampliations"][1]["member"], false);
    let (code, out) = ncdomain(&["factor", "--expr", e]);
    assert_eq!(code, 0);
    assert_eq!(last_json(&out)["p1"]["text"], "xi_1_1_1 - 1");
    let (code, _) = ncdomain(&["factor", "--expr", e, "--n", "2"]);
    assert_eq!(code, 3);
    let (code, _) = ncdomain(&["factor", "--expr", e, "--max-symbolic-vars", "4"]);
    assert_eq!(code, 3);
}

#[test]
fn construct_x() {
    let (code, out) = ncdomain(&["construct-x", "--poly", "x1*x2"]);
    assert_eq!(code, 0);
    let v = last_json(&out);
    assert_eq!((v["M"].clone(), v["N"].clone(), v["size"].clone()), (4.into(), 15.into(), 20.into()));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let (code, out) = ncdomain(&["construct-x", "--poly", "x4", "--emit-point"]);
    assert_eq!(code, 0);
    assert_eq!(last_json(&out)["X"]["n"], 4);
    assert_eq!(ncdomain(&["construct-x", "--poly", "x1^-1"]).0, 2);
}

#[test]
fn demos_are_deterministic() {
    for name in ["example-2.1", "example-3.10", "lemma-3.2"] {
        let (code, first) = ncdomain(&["demo", name]);
        assert_eq!(code, 0, "{name}");
        let (_, second) = ncdomain(&["demo", name]);
        assert_eq!(first, second);
    }
    let (_, out) = ncdomain(&["demo", "example-2.1"]);
    let v = last_json(&out);
    assert_eq!(v["minimal_size"], 3);
    assert_eq!(v["similar_to_displayed"], true);
    assert_eq!(v["direct_sum_point_in_edom2"], false);
    assert_eq!(v["left_shift_x2"]["equals_inverse_of_1_minus_x1"], true);
    assert!(out.contains("D1 = {x1 != 1}"));
}

#[test]
fn expr_file_input() {
    let f = point_file("(1 - x1)^-1\n");
    let (code, out) = ncdomain(&["realize", "--expr-file", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(last_json(&out)["size"], 1);
}
