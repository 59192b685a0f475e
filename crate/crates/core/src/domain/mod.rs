// SPDX-License-Identifier: Apache-2.0

//! Domain membership through the pencil of a minimal realization, witness
//! representatives, and the construction of points outside every
//! inverse-of-polynomial domain.

mod counterexample;
mod ncpoly;
mod witness;

pub use counterexample::{
    build_counterexample, verify_counterexample, CounterexampleData, SCHUR_INVERSE,
};
pub use ncpoly::NcPoly;
pub use witness::{witness, WitnessExpr};

use crate::expr::{eval_scalar, Expr};
use crate::linalg::{rat, MatTuple, Rat};
use crate::realization::{build, Realization, RealizationError};
use crate::symbolic::{det_poly, MPoly};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum DomainError {
    #[error("no scalar point found where the expression is defined")]
    NotFound,
    #[error("point is outside the domain")]
    NotInDomain,
    #[error("expected {expected} variables, got {got}")]
    PointMismatch { expected: usize, got: usize },
    #[error("realization must be centered at 0")]
    NotCenteredAtZero,
    #[error("not a polynomial: `{subexpr}` contains an inverse")]
    NotPolynomial { subexpr: Expr },
    #[error("polynomial has degree 0")]
    ConstantPolynomial,
    #[error("polynomial uses more than 4 variables")]
    TooManyVariables,
    #[error("no top-degree monomial starting with x1 under any admissible permutation")]
    NoLeadingX1Monomial,
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

/// Search budget for [`find_scalar_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSearch {
    pub seed: u64,
    /// Maximum number of candidate points examined.
    pub budget: usize,
}

impl Default for PointSearch {
    fn default() -> Self {
        PointSearch {
            seed: 0,
            budget: 20_000,
        }
    }
}

/// Values `0, 1, -1, 2, -2, …, r, -r`.
fn ordered_values(r: i64) -> Vec<Rat> {
    std::iter::once(rat(0))
        .chain((1..=r).flat_map(|v| [rat(v), rat(-v)]))
        .collect()
}

/// A scalar point at which `e` is defined. Integer grids of growing radius
/// are scanned in lexicographic order (values ordered `0, 1, -1, 2, …`),
/// then seeded random rationals. `None` is inconclusive.
pub fn find_scalar_point(e: &Expr, g: usize, search: &PointSearch) -> Option<Vec<Rat>> {
    let mut tried = 0usize;
    let defined = |alpha: &[Rat], tried: &mut usize| {
        *tried += 1;
        eval_scalar(e, alpha).is_ok()
    };
    for r in [1i64, 2, 4] {
        let values = ordered_values(r);
        let count = (values.len() as u128).saturating_pow(g as u32);
        if count > search.budget as u128 {
            break;
        }
        let mut idx = vec![0usize; g];
        loop {
            let alpha: Vec<Rat> = idx.iter().map(|&i| values[i].clone()).collect();
            if defined(&alpha, &mut tried) {
                return Some(alpha);
            }
            let mut pos = g;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < values.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    while tried < search.budget {
        let alpha: Vec<Rat> = (0..g)
            .map(|_| Rat::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=7).into()))
            .collect();
        if defined(&alpha, &mut tried) {
            return Some(alpha);
        }
    }
    None
}

/// `𝒟(𝕣;α)`: points where the pencil of a minimal realization is invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilDomain {
    pub realization: Realization,
}

/// Minimal realization of `e` about `α`, viewed as a domain.
pub fn pencil_domain(e: &Expr, alpha: &[Rat]) -> Result<PencilDomain, DomainError> {
    Ok(PencilDomain {
        realization: build(e, alpha)?,
    })
}

impl PencilDomain {
    pub fn from_realization(realization: Realization) -> Self {
        PencilDomain { realization }
    }

    pub fn g(&self) -> usize {
        self.realization.g()
    }

    /// `det L(X − I_n α) ≠ 0`.
    pub fn contains(&self, x: &MatTuple) -> Result<bool, DomainError> {
        if x.g() != self.g() {
            return Err(DomainError::PointMismatch {
                expected: self.g(),
                got: x.g(),
            });
        }
        Ok(!self.realization.pencil_det(x)?.is_zero())
    }

    /// `det L(x − α)` at scalar points, as a polynomial in `x₁, …, x_g`.
    pub fn scalar_det(&self) -> MPoly {
        let r = &self.realization;
        let g = r.g();
        let d = r.size();
        let alpha = r.base_point();
        let grid: Vec<Vec<MPoly>> = (0..d)
            .map(|p| {
                (0..d)
                    .map(|q| {
                        let mut e = MPoly::constant(g, if p == q { rat(1) } else { rat(0) });
                        for (j, a) in r.coefficients().iter().enumerate() {
                            let shifted = MPoly::var(g, j).sub(&MPoly::constant(g, alpha[j].clone()));
                            e = e.sub(&shifted.scale(&a[(p, q)]));
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        det_poly(&grid, g)
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// For every sample in the domain of `pd`, tests that it also lies in the
/// domain of the left shift by `x_{j+1}`. Requires base point 0.
pub fn shift_domain_inclusion_check(
    pd: &PencilDomain,
    j: usize,
    samples: &[MatTuple],
) -> Result<CheckReport, DomainError> {
    if pd.realization.base_point().iter().any(|a| !a.is_zero()) {
        return Err(DomainError::NotCenteredAtZero);
    }
    if j >= pd.g() {
        return Err(DomainError::PointMismatch {
            expected: pd.g(),
            got: j + 1,
        });
    }
    let shifted = PencilDomain::from_realization(pd.realization.left_shift(j));
    let mut in_domain = 0usize;
    let mut violations = Vec::new();
    for (i, x) in samples.iter().enumerate() {
        if pd.contains(x)? {
            in_domain += 1;
            if !shifted.contains(x)? {
                violations.push(i);
            }
        }
    }
    Ok(CheckReport {
        check: format!("left shift by x{} preserves the domain", j + 1),
        pass: violations.is_empty(),
        detail: format!(
            "{} samples, {} in domain, shifted pencil size {}, violations at {:?}",
            samples.len(),
            in_domain,
            shifted.realization.size(),
            violations
        ),
    })
}

#[cfg(test)]
mod tests;
