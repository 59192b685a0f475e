// SPDX-License-Identifier: Apache-2.0

use super::ast::{Expr, ExprAlgebra};
use crate::linalg::{LinalgError, MatTuple, QMatrix, Rat};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The point lies outside the domain of this representative.
    #[error("undefined at subexpression {subexpr}")]
    Undefined { subexpr: Expr },
    #[error("expression uses x{index} but the point has g = {g}")]
    VariableOutOfRange { index: usize, g: usize },
}

struct MatrixEval<'a> {
    point: &'a MatTuple,
}

impl ExprAlgebra for MatrixEval<'_> {
    type Value = QMatrix;
    type Error = EvalError;

    fn constant(&mut self, q: &Rat) -> Result<QMatrix, EvalError> {
        Ok(QMatrix::scalar(q, self.point.n()))
    }

    fn var(&mut self, j: usize) -> Result<QMatrix, EvalError> {
        if j >= self.point.g() {
            return Err(EvalError::VariableOutOfRange {
                index: j + 1,
                g: self.point.g(),
            });
        }
        Ok(self.point.get(j).clone())
    }

    fn add(&mut self, a: &QMatrix, b: &QMatrix) -> Result<QMatrix, EvalError> {
        Ok(a + b)
    }

    fn mul(&mut self, a: &QMatrix, b: &QMatrix) -> Result<QMatrix, EvalError> {
        Ok(a * b)
    }

    fn neg(&mut self, a: &QMatrix) -> Result<QMatrix, EvalError> {
        Ok(-a)
    }

    fn inv(&mut self, a: &QMatrix, node: &Expr) -> Result<QMatrix, EvalError> {
        a.inverse().map_err(|e| match e {
            LinalgError::Singular => EvalError::Undefined {
                subexpr: node.clone(),
            },
            other => unreachable!("square evaluation produced {other}"),
        })
    }
}

/// Evaluates `e` at the matrix point `X`; constants act as scalar multiples of `I_n`.
///
/// Returns [`EvalError::Undefined`] exactly when `X` is outside the domain of
/// this particular expression.
pub fn eval_expr(e: &Expr, point: &MatTuple) -> Result<QMatrix, EvalError> {
    e.fold(&mut MatrixEval { point })
}

/// Scalar evaluation at `α ∈ ℚ^g`.
pub fn eval_scalar(e: &Expr, alpha: &[Rat]) -> Result<Rat, EvalError> {
    let m = eval_expr(e, &MatTuple::scalar_point(alpha))?;
    Ok(m[(0, 0)].clone())
}
