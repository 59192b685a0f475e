// SPDX-License-Identifier: Apache-2.0

use super::rat::{format_rat, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Univariate polynomial over ℚ, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeffs.first().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    /// For a polynomial `p` with `p(0) ≠ 0`, returns `f` with `f(t)·t = 1 − p(t)/p(0)`,
    /// so that `f(A)·A = I` whenever `p(A) = 0`.
    pub fn inverse_cofactor(&self) -> Option<UPoly> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return None;
        }
        let scale = -a0.recip();
        Some(UPoly::new(
            self.coeffs[1..].iter().map(|c| c * &scale).collect(),
        ))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let coef = format_rat(c);
            parts.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}
