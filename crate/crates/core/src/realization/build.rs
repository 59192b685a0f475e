// SPDX-License-Identifier: Apache-2.0

use super::{minimize, Realization, RealizationError};
use crate::expr::{eval_scalar, EvalError, Expr, ExprAlgebra};
use crate::linalg::Rat;

struct Compose {
    g: usize,
}

impl ExprAlgebra for Compose {
    type Value = Realization;
    type Error = RealizationError;

    fn constant(&mut self, q: &Rat) -> Result<Realization, RealizationError> {
        Ok(Realization::constant(self.g, q.clone()))
    }

    fn var(&mut self, j: usize) -> Result<Realization, RealizationError> {
        if j >= self.g {
            return Err(RealizationError::PointMismatch {
                expected: j + 1,
                got: self.g,
            });
        }
        Ok(Realization::variable(self.g, j))
    }

    fn add(&mut self, a: &Realization, b: &Realization) -> Result<Realization, RealizationError> {
        a.add(b)
    }

    fn mul(&mut self, a: &Realization, b: &Realization) -> Result<Realization, RealizationError> {
        a.mul(b)
    }

    fn neg(&mut self, a: &Realization) -> Result<Realization, RealizationError> {
        Ok(a.neg())
    }

    fn inv(&mut self, a: &Realization, node: &Expr) -> Result<Realization, RealizationError> {
        a.inv().map_err(|_| RealizationError::NotRegularAtPoint {
            alpha: vec![],
            subexpr: node.clone(),
        })
    }
}

fn check_point(e: &Expr, alpha: &[Rat]) -> Result<(), RealizationError> {
    match eval_scalar(e, alpha) {
        Ok(_) => Ok(()),
        Err(EvalError::Undefined { subexpr }) => Err(RealizationError::NotRegularAtPoint {
            alpha: alpha.to_vec(),
            subexpr,
        }),
        Err(EvalError::VariableOutOfRange { index, g }) => Err(RealizationError::PointMismatch {
            expected: index,
            got: g,
        }),
    }
}

/// Compositional realization of `e` about `α` (g = `alpha.len()`), without
/// minimization. Its size is linear in the size of the syntax tree.
pub fn build_raw(e: &Expr, alpha: &[Rat]) -> Result<Realization, RealizationError> {
    check_point(e, alpha)?;
    let shifted = e.shift_vars(alpha);
    let r = shifted
        .fold(&mut Compose { g: alpha.len() })
        .map_err(|err| match err {
            RealizationError::NotRegularAtPoint { subexpr, .. } => {
                RealizationError::NotRegularAtPoint {
                    alpha: alpha.to_vec(),
                    subexpr,
                }
            }
            other => other,
        })?;
    Ok(r.recentered(alpha.to_vec()))
}

/// Minimal realization of `e` about the scalar point `α`.
pub fn build(e: &Expr, alpha: &[Rat]) -> Result<Realization, RealizationError> {
    Ok(minimize(&build_raw(e, alpha)?))
}
