// SPDX-License-Identifier: Apache-2.0

//! Exact dense linear algebra over ℚ.

mod matrix;
pub mod rat;
mod span;
mod tuple;
mod upoly;

pub use matrix::{LinalgError, QMatrix};
pub(crate) use matrix::dot;
pub use rat::{frac, rat, Rat};
pub use span::SpanBasis;
pub use tuple::MatTuple;
pub use upoly::UPoly;
