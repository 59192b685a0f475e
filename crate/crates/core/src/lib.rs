// SPDX-License-Identifier: Apache-2.0

//! Exact computations with noncommutative rational functions.
//!
//! Functions are represented by minimal recognizable-series realizations
//! `cᵗ(I − Σ Aⱼ(xⱼ − αⱼ))⁻¹b`; the monic pencil of a minimal realization
//! decides domain membership at matrix points exactly.

pub mod domain;
pub mod expr;
pub mod linalg;
pub mod random;
pub mod realization;
pub mod symbolic;

pub use expr::{eval_expr, expand_series, parse, EvalError, Expr, FreeSeries};
pub use linalg::{MatTuple, QMatrix, Rat};
pub use realization::{
    build, equal, eval_realization, minimize, EqualConfig, Realization, RealizationError, Verdict,
};
pub use symbolic::{
    ampliation_probe, direct_sum_factorization, edom_member, generic_eval, GenericEvaluation,
    MPoly, MRatFn, SymbolicError, SymbolicLimits,
};
pub use domain::{
    build_counterexample, find_scalar_point, pencil_domain, shift_domain_inclusion_check,
    verify_counterexample, witness, CheckReport, CounterexampleData, DomainError, NcPoly,
    PencilDomain, PointSearch, WitnessExpr,
};
