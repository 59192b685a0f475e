// SPDX-License-Identifier: Apache-2.0

//! Commutative polynomials and rational functions over ℚ, and evaluation of
//! expressions on generic matrices.

mod gcd;
mod generic;
mod mpoly;
mod ratfn;

pub use gcd::{gcd, lcm};
pub use generic::{
    ampliation_probe, direct_sum_factorization, edom_member, generic_eval, generic_point,
    generic_var, generic_var_name, DirectSumFactorization, GenericEvaluation, SymbolicLimits,
};
pub use mpoly::{det_poly, MPoly, Monomial};
pub use ratfn::MRatFn;

use crate::expr::Expr;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SymbolicError {
    #[error("inverse of a generically singular {n}x{n} matrix at `{subexpr}`")]
    DegenerateAtSizeN { n: usize, subexpr: Expr },
    #[error("symbolic size limit exceeded: {what} {value} > {limit}")]
    SymbolicSizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("expected a tuple of {} {}x{} matrices, got {} of size {}", expected.0, expected.1, expected.1, got.0, got.1)]
    SizeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("variable x{} used but only {g} variables declared", index + 1)]
    VariableOutOfRange { index: usize, g: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("block-diagonal polynomial does not split into Ξ′ and Ξ″ factors")]
    NotFactored,
}

#[cfg(test)]
mod tests;
