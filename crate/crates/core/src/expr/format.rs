// SPDX-License-Identifier: Apache-2.0

//! Canonical printing; `parse(format(e)) == e` for every tree.

use super::ast::{Expr, ExprKind};
use crate::linalg::rat::format_rat;
use num_traits::Signed;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Signed,
    Product,
    Postfix,
}

fn level_of(e: &Expr) -> Level {
    match e.kind() {
        ExprKind::Add(..) => Level::Sum,
        ExprKind::Neg(_) => Level::Signed,
        ExprKind::Mul(..) => Level::Product,
        ExprKind::Inv(_) | ExprKind::Const(_) | ExprKind::Var(_) => Level::Postfix,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: Level) -> fmt::Result {
    if level_of(e) < min {
        // "(-q)" would read back as a negative literal
        if let ExprKind::Neg(inner) = e.kind() {
            if let ExprKind::Const(q) = inner.kind() {
                if !q.is_negative() {
                    return write!(f, "(-({}))", format_rat(q));
                }
            }
        }
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e.kind() {
        ExprKind::Const(q) if q.is_negative() => write!(f, "(-{})", format_rat(&-q)),
        ExprKind::Const(q) => write!(f, "{}", format_rat(q)),
        ExprKind::Var(j) => write!(f, "x{}", j + 1),
        ExprKind::Add(a, b) => {
            write_at(f, a, Level::Sum)?;
            match b.kind() {
                ExprKind::Neg(inner) => {
                    write!(f, " - ")?;
                    write_at(f, inner, Level::Signed)
                }
                _ => {
                    write!(f, " + ")?;
                    write_at(f, b, Level::Signed)
                }
            }
        }
        ExprKind::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, Level::Signed)
        }
        ExprKind::Mul(a, b) => {
            write_at(f, a, Level::Product)?;
            write!(f, "*")?;
            write_at(f, b, Level::Postfix)
        }
        ExprKind::Inv(a) => {
            write_at(f, a, Level::Postfix)?;
            write!(f, "^-1")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}
