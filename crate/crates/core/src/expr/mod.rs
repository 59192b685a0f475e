// SPDX-License-Identifier: Apache-2.0

//! Noncommutative rational expressions: syntax, parsing, printing, exact
//! evaluation at matrix points, and truncated power-series expansion.

mod ast;
mod eval;
mod format;
mod parse;
mod series;

pub use ast::{Expr, ExprAlgebra, ExprKind};
pub use eval::{eval_expr, eval_scalar, EvalError};
pub use parse::{parse, parse_any, ParseError};
pub use series::{
    expand_series, format_word, words_of_length, words_up_to, FreeSeries, SeriesError, Word,
};
