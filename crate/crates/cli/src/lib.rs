// SPDX-License-Identifier: Apache-2.0

//! `ncdomain`: command-line access to realizations, domains, generic-matrix
//! evaluation and the packaged demos.
//!
//! Exit codes: 0 success, 1 mathematical negative (undefined, not in the
//! domain, unequal, not established), 2 usage or input error, 3 symbolic
//! resource limit.

mod demo;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncdomain_core::domain::{DomainError, PointSearch};
use ncdomain_core::expr::{parse_any, EvalError};
use ncdomain_core::linalg::rat::{format_rat, parse_rat};
use ncdomain_core::symbolic::generic_var_name;
use ncdomain_core::*;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Largest witness (as an unfolded tree) printed in full.
const MAX_PRINTED_TREE: u128 = 200_000;

#[derive(Parser, Debug)]
#[command(name = "ncdomain", version, about = "Exact domains of noncommutative rational functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every sampling procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of commuting indeterminates in symbolic work.
    #[arg(long, global = true, default_value_t = 16)]
    max_symbolic_vars: usize,
    /// Maximum total degree in symbolic work.
    #[arg(long, global = true, default_value_t = 24)]
    max_degree: u32,
}

#[derive(Args, Debug, Clone)]
struct ExprArgs {
    /// Expression text, e.g. "(1 - x1)*x2*(1 - x1)^-1".
    #[arg(long, conflicts_with = "expr_file", required_unless_present = "expr_file")]
    expr: Option<String>,
    /// File holding the expression text.
    #[arg(long)]
    expr_file: Option<PathBuf>,
    /// Number of variables (default: inferred).
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    /// Matrix tuple as JSON {"n","g","X"}, inline or as a file path.
    #[arg(long)]
    point: String,
}

#[derive(Args, Debug, Clone)]
struct AtArgs {
    /// Scalar base point "a1,a2,..." (default: searched).
    #[arg(long)]
    at: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print an expression in canonical form.
    Parse(ExprArgs),
    /// Evaluate an expression at a matrix point.
    Eval {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        p: PointArgs,
    },
    /// Minimal realization about a scalar point.
    Realize {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        at: AtArgs,
    },
    /// Power-series coefficients about a scalar point.
    Series {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        at: AtArgs,
        /// Longest word listed.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Left or right shift of the minimal realization.
    Shift {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        at: AtArgs,
        /// Variable index (1-based).
        #[arg(long)]
        var: usize,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// Decide whether two expressions define the same function.
    Equal {
        #[command(flatten)]
        e: ExprArgs,
        /// Right-hand side.
        #[arg(long)]
        rhs: String,
    },
    /// Exact domain membership through the minimal pencil.
    Domain {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        p: PointArgs,
        #[command(flatten)]
        at: AtArgs,
    },
    /// An expression for the same function that is defined at the point.
    Witness {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        p: PointArgs,
        #[command(flatten)]
        at: AtArgs,
    },
    /// Extended-domain membership via generic matrices.
    Edom {
        #[command(flatten)]
        e: ExprArgs,
        #[command(flatten)]
        p: PointArgs,
        /// Also test the ampliations I_l (x) X for l = 1..=L.
        #[arg(long)]
        ampliations: Option<usize>,
    },
    /// Factor the extended-domain polynomial on block-diagonal matrices.
    Factor {
        #[command(flatten)]
        e: ExprArgs,
        /// Block size n (the polynomial lives at size 2n).
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Build and check a point where f(X) is singular but the block matrix is not.
    ConstructX {
        /// Polynomial in x1..x4.
        #[arg(long)]
        poly: String,
        /// Include the matrix tuple in the output.
        #[arg(long)]
        emit_point: bool,
    },
    /// Packaged walkthroughs.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DemoName {
    #[value(name = "example-2.1")]
    Example21,
    #[value(name = "example-3.10")]
    Example310,
    #[value(name = "lemma-3.2")]
    Lemma32,
}

/// Result of a command: JSON, optional transcript, and whether the answer
/// is a mathematical negative.
pub(crate) struct Report {
    pub json: Value,
    pub text: Option<String>,
    pub negative: bool,
}

impl Report {
    fn positive(json: Value) -> Self {
        Report {
            json,
            text: None,
            negative: false,
        }
    }

    fn answer(json: Value, positive: bool) -> Self {
        Report {
            json,
            text: None,
            negative: !positive,
        }
    }
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Negative(String),
    Limit(String),
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::SymbolicSizeLimit { .. } => CliError::Limit(e.to_string()),
            SymbolicError::SizeMismatch { .. } | SymbolicError::VariableOutOfRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Negative(e.to_string()),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        match e {
            RealizationError::NotRegularAtPoint { .. } | RealizationError::SingularPencil => {
                CliError::Negative(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        match e {
            DomainError::NotFound | DomainError::NotInDomain | DomainError::NoLeadingX1Monomial => {
                CliError::Negative(e.to_string())
            }
            DomainError::Realization(r) => r.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

struct Ctx {
    seed: u64,
    limits: SymbolicLimits,
}

impl Ctx {
    fn search(&self) -> PointSearch {
        PointSearch {
            seed: self.seed,
            ..PointSearch::default()
        }
    }
}

fn read_expr(a: &ExprArgs) -> Result<(Expr, usize), CliError> {
    let text = match (&a.expr, &a.expr_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(CliError::Usage("--expr or --expr-file is required".into())),
    };
    let e = parse_any(text.trim()).map_err(|e| CliError::Usage(e.to_string()))?;
    let g = match a.vars {
        Some(g) if g < e.min_vars() => {
            return Err(CliError::Usage(format!(
                "expression uses x{} but --vars is {g}",
                e.min_vars()
            )))
        }
        Some(g) => g,
        None => e.min_vars(),
    };
    Ok((e, g))
}

fn read_point(p: &PointArgs) -> Result<MatTuple, CliError> {
    let text = if p.point.trim_start().starts_with('{') {
        p.point.clone()
    } else {
        std::fs::read_to_string(&p.point)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.point)))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad point JSON: {e}")))
}

fn parse_at(text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(',')
        .map(|s| parse_rat(s.trim()).ok_or_else(|| CliError::Usage(format!("bad rational `{s}` in --at"))))
        .collect()
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rat(q))).collect())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub(crate) fn poly_json(p: &MPoly, n: usize) -> Value {
    json!({
        "text": p.display_with(&|i| generic_var_name(n, i)),
        "terms": to_json(p),
    })
}

/// The base point: `--at` if given, else the first point found by search.
fn base_point(e: &Expr, g: usize, at: &AtArgs, ctx: &Ctx) -> Result<Vec<Rat>, CliError> {
    match &at.at {
        Some(t) => {
            let alpha = parse_at(t)?;
            if alpha.len() != g {
                return Err(CliError::Usage(format!(
                    "--at has {} coordinates, expected {g}",
                    alpha.len()
                )));
            }
            Ok(alpha)
        }
        None => find_scalar_point(e, g, &ctx.search()).ok_or_else(|| {
            CliError::Negative(
                "unknown: no scalar point found where the expression is defined".into(),
            )
        }),
    }
}

fn g_with_point(g: usize, x: &MatTuple) -> Result<usize, CliError> {
    if x.g() < g {
        return Err(CliError::Usage(format!(
            "expression needs {g} variables but the point has {}",
            x.g()
        )));
    }
    Ok(x.g())
}

pub(crate) fn witness_json(w: &WitnessExpr) -> Value {
    let tree = w.expr.tree_size();
    json!({
        "witness": if tree <= MAX_PRINTED_TREE { Value::String(w.expr.to_string()) } else { Value::Null },
        "tree_size": tree.to_string(),
        "dag_size": w.expr.dag_size(),
    })
}

fn execute(cmd: Command, ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        Command::Parse(a) => {
            let (e, g) = read_expr(&a)?;
            Ok(Report::positive(json!({
                "expr": e.to_string(),
                "g": g,
                "tree_size": e.tree_size().to_string(),
                "dag_size": e.dag_size(),
                "has_inverse": e.has_inverse(),
            })))
        }
        Command::Eval { e, p } => {
            let (e, g) = read_expr(&e)?;
            let x = read_point(&p)?;
            g_with_point(g, &x)?;
            match eval_expr(&e, &x) {
                Ok(v) => Ok(Report::positive(json!({"defined": true, "value": to_json(&v)}))),
                Err(EvalError::Undefined { subexpr }) => Ok(Report::answer(
                    json!({
                        "defined": false,
                        "subexpr": subexpr.to_string(),
                        "message": format!("undefined at subexpression {subexpr}"),
                    }),
                    false,
                )),
                Err(err) => Err(CliError::Usage(err.to_string())),
            }
        }
        Command::Realize { e, at } => {
            let (e, g) = read_expr(&e)?;
            let alpha = base_point(&e, g, &at, ctx)?;
            let r = build(&e, &alpha)?;
            Ok(Report::positive(json!({
                "size": r.size(),
                "realization": to_json(&r),
            })))
        }
        Command::Series { e, at, max_len } => {
            let (e, g) = read_expr(&e)?;
            let alpha = match &at.at {
                Some(_) => base_point(&e, g, &at, ctx)?,
                None => vec![Rat::from_integer(0.into()); g],
            };
            let r = build(&e, &alpha)?;
            let coeffs: Vec<Value> = r
                .series_up_to(max_len)
                .into_iter()
                .map(|(w, q)| json!({"word": expr::format_word(&w), "coeff": format_rat(&q)}))
                .collect();
            Ok(Report::positive(json!({
                "base_point": rats_json(&alpha),
                "max_len": max_len,
                "coefficients": coeffs,
            })))
        }
        Command::Shift { e, at, var, side } => {
            let (e, g) = read_expr(&e)?;
            if var == 0 || var > g.max(1) {
                return Err(CliError::Usage(format!("--var must be in 1..={g}")));
            }
            let alpha = base_point(&e, g, &at, ctx)?;
            let r = build(&e, &alpha)?;
            let s = match side {
                Side::Left => r.left_shift(var - 1),
                Side::Right => r.right_shift(var - 1),
            };
            Ok(Report::positive(json!({
                "side": format!("{side:?}").to_lowercase(),
                "var": var,
                "size": s.size(),
                "realization": to_json(&s),
            })))
        }
        Command::Equal { e, rhs } => {
            let (lhs, g1) = read_expr(&e)?;
            let rhs = parse_any(&rhs).map_err(|e| CliError::Usage(e.to_string()))?;
            let g = g1.max(rhs.min_vars());
            let cfg = EqualConfig {
                seed: ctx.seed,
                ..EqualConfig::default()
            };
            let v = equal(&lhs, &rhs, g, &cfg)?;
            Ok(match v {
                Verdict::Equal { alpha } => Report::positive(json!({
                    "verdict": "equal",
                    "base_point": rats_json(&alpha),
                })),
                Verdict::Unequal { alpha, word, lhs, rhs } => Report::answer(
                    json!({
                        "verdict": "unequal",
                        "base_point": rats_json(&alpha),
                        "word": expr::format_word(&word),
                        "lhs_coeff": format_rat(&lhs),
                        "rhs_coeff": format_rat(&rhs),
                    }),
                    false,
                ),
                Verdict::Unknown => Report::answer(json!({"verdict": "unknown"}), false),
            })
        }
        Command::Domain { e, p, at } => {
            let (e, g) = read_expr(&e)?;
            let x = read_point(&p)?;
            let g = g_with_point(g, &x)?;
            let alpha = base_point(&e, g, &at, ctx)?;
            let pd = pencil_domain(&e, &alpha)?;
            let det = pd.realization.pencil_det(&x)?;
            let inside = !num_traits::Zero::is_zero(&det);
            let mut report = Report::answer(
                json!({
                    "in-domain": inside,
                    "base_point": rats_json(&alpha),
                    "pencil_size": pd.realization.size(),
                    "pencil_det": format_rat(&det),
                }),
                inside,
            );
            report.text = Some(format!("in-domain: {inside}"));
            Ok(report)
        }
        Command::Witness { e, p, at } => {
            let (e, g) = read_expr(&e)?;
            let x = read_point(&p)?;
            let g = g_with_point(g, &x)?;
            let alpha = base_point(&e, g, &at, ctx)?;
            let pd = pencil_domain(&e, &alpha)?;
            let w = witness(&pd, &x)?;
            let value = eval_expr(&w.expr, &x)
                .map_err(|err| CliError::Negative(format!("witness not defined: {err}")))?;
            let expected = pd.realization.eval(&x)?;
            let mut out = witness_json(&w);
            out["value"] = to_json(&value);
            out["matches_realization"] = Value::Bool(value == expected);
            out["representative_defined"] = Value::Bool(eval_expr(&e, &x).is_ok());
            Ok(Report::answer(out, value == expected))
        }
        Command::Edom { e, p, ampliations } => {
            let (e, g) = read_expr(&e)?;
            let x = read_point(&p)?;
            g_with_point(g, &x)?;
            let ge = generic_eval(&e, x.g(), x.n(), &ctx.limits)?;
            let member = edom_member(&ge, &x)?;
            let mut out = json!({
                "n": x.n(),
                "member": member,
                "denom_lcm": poly_json(&ge.denom_lcm, x.n()),
            });
            let mut positive = member;
            if let Some(l) = ampliations {
                let table = ampliation_probe(&e, &x, l, &ctx.limits)?;
                positive = table.iter().all(|(_, m)| *m);
                out["ampliations"] = Value::Array(
                    table
                        .iter()
                        .map(|(l, m)| json!({"l": l, "member": m}))
                        .collect(),
                );
            }
            Ok(Report::answer(out, positive))
        }
        Command::Factor { e, n } => {
            let (e, g) = read_expr(&e)?;
            let f = direct_sum_factorization(&e, g.max(1), n, &ctx.limits)?;
            Ok(Report::positive(json!({
                "n": n,
                "p": poly_json(&f.p, 2 * n),
                "p1": poly_json(&f.p1, n),
                "p2": poly_json(&f.p2, n),
            })))
        }
        Command::ConstructX { poly, emit_point } => {
            let e = parse_any(&poly).map_err(|e| CliError::Usage(e.to_string()))?;
            let f = NcPoly::from_expr(&e)?;
            let cd = build_counterexample(&f)?;
            let checks = verify_counterexample(&cd);
            let pass = checks.iter().all(|c| c.pass);
            let mut out = counterexample_json(&cd, &checks);
            if emit_point {
                out["X"] = to_json(&cd.x);
            }
            Ok(Report::answer(out, pass))
        }
        Command::Demo { name } => match name {
            DemoName::Example21 => demo::example_21(ctx.seed, &ctx.limits),
            DemoName::Example310 => demo::example_310(ctx.seed),
            DemoName::Lemma32 => demo::lemma_32(&ctx.limits),
        },
    }
}

pub(crate) fn counterexample_json(cd: &CounterexampleData, checks: &[CheckReport]) -> Value {
    json!({
        "f": cd.f.to_string(),
        "normalized": cd.normalized.to_string(),
        "permutation": cd.permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "d": cd.d,
        "u0": expr::format_word(&cd.u0),
        "M": cd.m,
        "N": cd.n,
        "size": cd.size(),
        "checks": to_json(&checks),
    })
}

/// Runs the tool on `args` (including the program name), writing standard
/// output to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let ctx = Ctx {
        seed: cli.seed,
        limits: SymbolicLimits {
            max_vars: cli.max_symbolic_vars,
            max_degree: cli.max_degree,
        },
    };
    match execute(cli.command, &ctx) {
        Ok(report) => {
            if let Some(text) = &report.text {
                let _ = writeln!(out, "{text}");
            }
            let _ = writeln!(out, "{}", report.json);
            i32::from(report.negative)
        }
        Err(CliError::Negative(msg)) => {
            let _ = writeln!(out, "{}", json!({"result": "negative", "message": msg}));
            1
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Limit(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}
