// SPDX-License-Identifier: Apache-2.0

use crate::{counterexample_json, poly_json, witness_json, CliError, Report};
use ncdomain_core::domain::SCHUR_INVERSE;
use ncdomain_core::linalg::rat::{format_rat, rat};
use ncdomain_core::realization::similar;
use ncdomain_core::symbolic::generic_var_name;
use ncdomain_core::*;
use serde_json::{json, Value};

const EX21: &str = "(1 - x1)*x2*(1 - x1)^-1";

fn point_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

fn x_name(i: usize) -> String {
    format!("x{}", i + 1)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn displayed_realization() -> Realization {
    Realization::new(
        vec![rat(0), rat(0)],
        vec![rat(0), rat(1), rat(0)],
        vec![
            QMatrix::from_i64(&[&[0, 0, 0], &[-1, 0, 0], &[0, 0, 1]]),
            QMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]),
        ],
        vec![rat(0), rat(0), rat(1)],
    )
    .expect("well-formed")
}

fn finish(lines: Vec<String>, json: Value) -> Result<Report, CliError> {
    Ok(Report {
        json,
        text: Some(lines.join("\n")),
        negative: false,
    })
}

pub(crate) fn example_21(seed: u64, limits: &SymbolicLimits) -> Result<Report, CliError> {
    let e = parse(EX21, 2).expect("valid");
    let search = domain::PointSearch {
        seed,
        ..Default::default()
    };
    let alpha = find_scalar_point(&e, 2, &search).ok_or(domain::DomainError::NotFound)?;
    let pd = pencil_domain(&e, &alpha)?;
    let r = &pd.realization;
    let p = similar(r, &displayed_realization());
    let det = pd.scalar_det();
    let det = det.scale(&det.leading_coeff().recip());
    let det_text = det.display_with(&x_name);

    let ge1 = generic_eval(&e, 2, 1, limits)?;
    let ge2 = generic_eval(&e, 2, 2, limits)?;
    let entry = &ge1.entries[0][0];
    let entry_text = format!(
        "{} / {}",
        entry.num().display_with(&|i| generic_var_name(1, i)),
        entry.den().display_with(&|i| generic_var_name(1, i))
    );
    let one = MatTuple::scalar_point(&[rat(1), rat(1)]);
    let one_pencil = pd.contains(&one)?;
    let one_edom = edom_member(&ge1, &one)?;
    let proj = QMatrix::diag(&[rat(1), rat(0)]);
    let id = QMatrix::identity(2);
    let sum_point = MatTuple::new(2, vec![proj.clone(), proj]).expect("square");
    let id_point = MatTuple::new(2, vec![id.clone(), id]).expect("square");
    let sum_edom = edom_member(&ge2, &sum_point)?;
    let id_edom = edom_member(&ge2, &id_point)?;
    let shifted = r.left_shift(1);
    let target = build(&parse("(1 - x1)^-1", 2).expect("valid"), &alpha)?;
    let shift_equal = minimize(&shifted.sub(&target)?).size() == 0;

    let lines = vec![
        format!("expression: {e}"),
        format!("base point: {}", point_text(&alpha)),
        format!("minimal realization size: {}", r.size()),
        format!(
            "similar to the realization c = e2, b = e3 shown with the example: {}{}",
            yes(p.is_some()),
            p.as_ref().map(|p| format!(", P = {p:?}")).unwrap_or_default()
        ),
        format!("det L(x) at scalar points: {det_text} (up to a constant), so D1 = {{x1 != 1}}"),
        format!("generic evaluation at n = 1: {entry_text}, so edom_1 is the whole plane"),
        format!("(1, 1): in pencil domain {one_pencil}, in edom_1 {one_edom}"),
        format!("(1+0, 1+0) in edom_2: {sum_edom}"),
        format!("(I2, I2) in edom_2: {id_edom}"),
        format!(
            "left shift by x2 has size {} and equals (1 - x1)^-1: {}",
            shifted.size(),
            yes(shift_equal)
        ),
    ];
    let json = json!({
        "expression": e.to_string(),
        "base_point": alpha.iter().map(format_rat).collect::<Vec<_>>(),
        "minimal_size": r.size(),
        "realization": serde_json::to_value(r).expect("serializable"),
        "similar_to_displayed": p.is_some(),
        "scalar_det": det_text,
        "edom1_entry": entry_text,
        "edom1_denominator_is_one": ge1.denom_lcm.is_one(),
        "point_1_1": {"pencil_domain": one_pencil, "edom": one_edom},
        "direct_sum_point_in_edom2": sum_edom,
        "identity_point_in_edom2": id_edom,
        "left_shift_x2": {"size": shifted.size(), "equals_inverse_of_1_minus_x1": shift_equal},
    });
    finish(lines, json)
}

pub(crate) fn example_310(seed: u64) -> Result<Report, CliError> {
    let e = parse(SCHUR_INVERSE, 4).expect("valid");
    let search = domain::PointSearch {
        seed,
        ..Default::default()
    };
    let alpha = find_scalar_point(&e, 4, &search).ok_or(domain::DomainError::NotFound)?;
    let pd = pencil_domain(&e, &alpha)?;
    let det = pd.scalar_det();
    let det = det.scale(&det.leading_coeff().recip());
    let det_text = det.display_with(&x_name);
    let mut lines = vec![
        format!("expression: {e}"),
        format!("base point: {}", point_text(&alpha)),
        format!("minimal pencil size: {}", pd.realization.size()),
        format!("det L(x - alpha) at scalar points: {det_text}"),
    ];
    let mut cases = Vec::new();
    for text in ["x1", "x1*x2"] {
        let f = NcPoly::from_expr(&parse(text, 4).expect("valid"))?;
        let cd = build_counterexample(&f)?;
        let checks = verify_counterexample(&cd);
        lines.push(format!(
            "f = {text}: d = {}, u0 = {}, M = {}, N = {}, X has size {}",
            cd.d,
            expr::format_word(&cd.u0),
            cd.m,
            cd.n,
            cd.size()
        ));
        for c in &checks {
            lines.push(format!(
                "  {}: {} ({})",
                c.check,
                if c.pass { "pass" } else { "FAIL" },
                c.detail
            ));
        }
        let mut case = counterexample_json(&cd, &checks);
        if cd.d == 1 {
            let w = witness(&pd, &cd.x)?;
            let value = eval_expr(&w.expr, &cd.x).ok();
            let matches = value.as_ref() == pd.realization.eval(&cd.x).ok().as_ref();
            let rep_defined = eval_expr(&e, &cd.x).is_ok();
            lines.push(format!(
                "  given representative defined at X: {rep_defined}; witness defined: {}, matches the realization: {matches}, dag size {}",
                value.is_some(),
                w.expr.dag_size()
            ));
            let mut wj = witness_json(&w);
            wj["representative_defined"] = Value::Bool(rep_defined);
            wj["matches_realization"] = Value::Bool(matches);
            case["witness"] = wj;
        }
        cases.push(case);
    }
    let json = json!({
        "expression": e.to_string(),
        "base_point": alpha.iter().map(format_rat).collect::<Vec<_>>(),
        "pencil_size": pd.realization.size(),
        "realization": serde_json::to_value(&pd.realization).expect("serializable"),
        "scalar_det": det_text,
        "constructions": cases,
    });
    finish(lines, json)
}

pub(crate) fn lemma_32(limits: &SymbolicLimits) -> Result<Report, CliError> {
    let mut lines = Vec::new();
    let mut cases = Vec::new();
    for (text, g) in [(EX21, 2), ("x1^-1", 1), ("(1 + x1*x2)^-1 + x2*(x1 - x2)^-1", 2)] {
        let e = parse(text, g).expect("valid");
        let f = direct_sum_factorization(&e, g, 1, limits)?;
        let half = g;
        let split_name = |i: usize| {
            if i < half {
                format!("{}'", generic_var_name(1, i))
            } else {
                format!("{}''", generic_var_name(1, i - half))
            }
        };
        let one = |i| generic_var_name(1, i);
        let p1 = f.p1.display_with(&one);
        let p2 = f.p2.display_with(&one);
        lines.push(format!("expression: {text}"));
        lines.push(format!("  p(Xi' + Xi'') = {}", f.block_diagonal.display_with(&split_name)));
        lines.push(format!("  p1(Xi') = {p1}"));
        lines.push(format!("  p2(Xi'') = {p2}"));
        cases.push(json!({
            "expression": text,
            "p": poly_json(&f.p, 2),
            "p1": poly_json(&f.p1, 1),
            "p2": poly_json(&f.p2, 1),
        }));
    }
    finish(lines, json!({"factorizations": cases}))
}
