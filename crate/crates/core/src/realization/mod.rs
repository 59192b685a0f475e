// SPDX-License-Identifier: Apache-2.0

//! Recognizable-series realizations `r = cᵗ(I − Σⱼ Aⱼ(xⱼ − αⱼ))⁻¹b`.
//!
//! Every realization is centered at a scalar base point α; the series
//! coefficients `cᵗ A_w b` are those of the expansion about α. Size zero is
//! the zero function.

mod build;
mod equal;
mod minimize;

pub use build::{build, build_raw};
pub use equal::{equal, find_common_point, EqualConfig, Verdict};
pub use minimize::{krylov_words, minimize, similar};

use crate::expr::{Expr, Word};
use crate::linalg::rat::{serde_rat_vec, Rat};
use crate::linalg::{dot, LinalgError, MatTuple, QMatrix};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("realizations are centered at different base points")]
    BasePointMismatch,
    #[error("realizations have different variable counts ({0} vs {1})")]
    VariableCountMismatch(usize, usize),
    #[error("constant term is zero; no inverse about the base point")]
    ZeroConstantTerm,
    #[error("not regular at the base point: {subexpr} is undefined there")]
    NotRegularAtPoint { alpha: Vec<Rat>, subexpr: Expr },
    #[error("pencil is singular at the given point")]
    SingularPencil,
    #[error("point has g = {got}, realization has g = {expected}")]
    PointMismatch { expected: usize, got: usize },
    #[error("inconsistent realization data: {0}")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RealizationWire", into = "RealizationWire")]
pub struct Realization {
    alpha: Vec<Rat>,
    c: Vec<Rat>,
    a: Vec<QMatrix>,
    b: Vec<Rat>,
}

impl Realization {
    /// Validating constructor; `g = alpha.len() = a.len()`.
    pub fn new(
        alpha: Vec<Rat>,
        c: Vec<Rat>,
        a: Vec<QMatrix>,
        b: Vec<Rat>,
    ) -> Result<Self, RealizationError> {
        let d = c.len();
        if b.len() != d {
            return Err(RealizationError::Malformed(format!(
                "c has length {d} but b has length {}",
                b.len()
            )));
        }
        if a.len() != alpha.len() {
            return Err(RealizationError::Malformed(format!(
                "{} coefficient matrices for {} variables",
                a.len(),
                alpha.len()
            )));
        }
        if let Some(m) = a.iter().find(|m| m.shape() != (d, d)) {
            return Err(RealizationError::Malformed(format!(
                "coefficient matrix of shape {:?}, expected {d}x{d}",
                m.shape()
            )));
        }
        Ok(Realization { alpha, c, a, b })
    }

    fn from_parts(alpha: Vec<Rat>, c: Vec<Rat>, a: Vec<QMatrix>, b: Vec<Rat>) -> Self {
        debug_assert!(Self::new(alpha.clone(), c.clone(), a.clone(), b.clone()).is_ok());
        Realization { alpha, c, a, b }
    }

    pub fn zero(g: usize) -> Self {
        Self::from_parts(vec![Rat::zero(); g], vec![], vec![QMatrix::zeros(0, 0); g], vec![])
    }

    /// The constant function `q` (size 1, or size 0 for `q = 0`).
    pub fn constant(g: usize, q: Rat) -> Self {
        if q.is_zero() {
            return Self::zero(g);
        }
        Self::from_parts(
            vec![Rat::zero(); g],
            vec![Rat::one()],
            vec![QMatrix::zeros(1, 1); g],
            vec![q],
        )
    }

    /// The coordinate function `x_{j+1}`, via a nilpotent size-2 pencil.
    pub fn variable(g: usize, j: usize) -> Self {
        assert!(j < g, "variable index out of range");
        let mut a = vec![QMatrix::zeros(2, 2); g];
        a[j] = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        Self::from_parts(
            vec![Rat::zero(); g],
            vec![Rat::one(), Rat::zero()],
            a,
            vec![Rat::zero(), Rat::one()],
        )
    }

    pub fn g(&self) -> usize {
        self.alpha.len()
    }

    /// State dimension `d`.
    pub fn size(&self) -> usize {
        self.c.len()
    }

    pub fn base_point(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn c(&self) -> &[Rat] {
        &self.c
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    pub fn coefficients(&self) -> &[QMatrix] {
        &self.a
    }

    /// Reinterprets the same data as centered at `alpha`.
    pub fn recentered(mut self, alpha: Vec<Rat>) -> Self {
        assert_eq!(alpha.len(), self.g(), "base point length");
        self.alpha = alpha;
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<(), RealizationError> {
        if self.g() != other.g() {
            return Err(RealizationError::VariableCountMismatch(self.g(), other.g()));
        }
        if self.alpha != other.alpha {
            return Err(RealizationError::BasePointMismatch);
        }
        Ok(())
    }

    /// `A_w v = A_{j1}(A_{j2}(⋯ A_{jk} v))`.
    pub fn apply_word(&self, w: &[usize], v: &[Rat]) -> Vec<Rat> {
        w.iter()
            .rev()
            .fold(v.to_vec(), |acc, &j| self.a[j].mul_vec(&acc))
    }

    /// Coefficient of the word `w` in the expansion about the base point: `cᵗ A_w b`.
    pub fn series_coeff(&self, w: &[usize]) -> Rat {
        dot(&self.c, &self.apply_word(w, &self.b))
    }

    /// Value at the base point.
    pub fn constant_term(&self) -> Rat {
        dot(&self.c, &self.b)
    }

    /// Direct-sum realization of `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self, RealizationError> {
        self.check_compatible(other)?;
        Ok(Self::from_parts(
            self.alpha.clone(),
            [self.c.as_slice(), &other.c].concat(),
            self.a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x.direct_sum(y))
                .collect(),
            [self.b.as_slice(), &other.b].concat(),
        ))
    }

    /// Cauchy-product realization of `self · other`:
    /// `c = (c₁; 0)`, `Aⱼ = [[A₁ⱼ, b₁c₂ᵗA₂ⱼ], [0, A₂ⱼ]]`, `b = ((c₂ᵗb₂)b₁; b₂)`.
    pub fn mul(&self, other: &Self) -> Result<Self, RealizationError> {
        self.check_compatible(other)?;
        let (d1, d2) = (self.size(), other.size());
        let b1 = QMatrix::column(self.b.clone());
        let c2t = QMatrix::column(other.c.clone()).transpose();
        let coupling = &b1 * &c2t;
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(a1, a2)| {
                QMatrix::from_blocks(&[
                    vec![a1.clone(), &coupling * a2],
                    vec![QMatrix::zeros(d2, d1), a2.clone()],
                ])
            })
            .collect();
        let gamma2 = other.constant_term();
        let mut c = self.c.clone();
        c.extend(std::iter::repeat_n(Rat::zero(), d2));
        let mut b: Vec<Rat> = self.b.iter().map(|x| x * &gamma2).collect();
        b.extend_from_slice(&other.b);
        Ok(Self::from_parts(self.alpha.clone(), c, a, b))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero(self.g()).recentered(self.alpha.clone());
        }
        let mut out = self.clone();
        out.b = out.b.iter().map(|x| x * q).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RealizationError> {
        self.add(&other.neg())
    }

    /// Multiplicative inverse by the star construction.
    ///
    /// With `γ = cᵗb ≠ 0`, `s = 1 − γ⁻¹r` is proper and is realized by
    /// `λ = (1; c)`, `μⱼ = diag(0, Aⱼ)`, `ρ = (1; −γ⁻¹b)` with `λᵗρ = 0`. Then
    /// `s* = 1 + λᵗ(I − Σ μ̂ⱼxⱼ)⁻¹ρ` with `μ̂ⱼ = μⱼ(I + ρλᵗ)`, and `r⁻¹ = γ⁻¹s*`.
    pub fn inv(&self) -> Result<Self, RealizationError> {
        let gamma = self.constant_term();
        if gamma.is_zero() {
            return Err(RealizationError::ZeroConstantTerm);
        }
        let g_inv = gamma.recip();
        let d = self.size();
        let mut lambda = vec![Rat::one()];
        lambda.extend_from_slice(&self.c);
        let mut rho = vec![Rat::one()];
        rho.extend(self.b.iter().map(|x| -(x * &g_inv)));
        let twist = &QMatrix::identity(d + 1)
            + &(&QMatrix::column(rho.clone()) * &QMatrix::column(lambda.clone()).transpose());
        let mu_hat: Vec<QMatrix> = self
            .a
            .iter()
            .map(|aj| &QMatrix::zeros(1, 1).direct_sum(aj) * &twist)
            .collect();
        let star = Self::from_parts(
            self.alpha.clone(),
            lambda,
            mu_hat,
            rho.iter().map(|x| x * &g_inv).collect(),
        );
        let unit = Self::constant(self.g(), g_inv).recentered(self.alpha.clone());
        unit.add(&star)
    }

    /// Left shift by `x_{j+1}`: coefficients become `α_{xⱼw}`. Output is minimized.
    pub fn left_shift(&self, j: usize) -> Self {
        let mut out = self.clone();
        out.c = self.a[j].transpose().mul_vec(&self.c);
        minimize(&out)
    }

    /// Right shift by `x_{j+1}`: coefficients become `α_{wxⱼ}`. Output is minimized.
    pub fn right_shift(&self, j: usize) -> Self {
        let mut out = self.clone();
        out.b = self.a[j].mul_vec(&self.b);
        minimize(&out)
    }

    /// Transposed data: realizes the reversed series.
    pub(crate) fn transpose(&self) -> Self {
        Self::from_parts(
            self.alpha.clone(),
            self.b.clone(),
            self.a.iter().map(QMatrix::transpose).collect(),
            self.c.clone(),
        )
    }

    /// The pencil `L(X − I_n α) = I ⊗ I − Σⱼ Aⱼ ⊗ (Xⱼ − αⱼI_n)`.
    pub fn pencil_at(&self, x: &MatTuple) -> Result<QMatrix, RealizationError> {
        if x.g() != self.g() {
            return Err(RealizationError::PointMismatch {
                expected: self.g(),
                got: x.g(),
            });
        }
        let n = x.n();
        let d = self.size();
        let mut l = QMatrix::identity(d * n);
        for (aj, (xj, alj)) in self.a.iter().zip(x.mats().iter().zip(&self.alpha)) {
            if aj.is_zero() {
                continue;
            }
            let shifted = xj - &QMatrix::scalar(alj, n);
            l = &l - &aj.kron(&shifted);
        }
        Ok(l)
    }

    /// `det L(X − I_n α)`.
    pub fn pencil_det(&self, x: &MatTuple) -> Result<Rat, RealizationError> {
        Ok(self.pencil_at(x)?.det().expect("pencil is square"))
    }

    /// `(cᵗ ⊗ I_n) L(X − I_n α)⁻¹ (b ⊗ I_n)`.
    pub fn eval(&self, x: &MatTuple) -> Result<QMatrix, RealizationError> {
        let n = x.n();
        let l = self.pencil_at(x)?;
        let id = QMatrix::identity(n);
        let rhs = QMatrix::column(self.b.clone()).kron(&id);
        let y = l.solve_square(&rhs).map_err(|e| match e {
            LinalgError::Singular => RealizationError::SingularPencil,
            other => unreachable!("pencil solve failed: {other}"),
        })?;
        let ct = QMatrix::column(self.c.clone()).transpose().kron(&id);
        Ok(&ct * &y)
    }

    /// Nonzero coefficients on all words of length at most `max_len`.
    pub fn series_up_to(&self, max_len: usize) -> Vec<(Word, Rat)> {
        crate::expr::words_up_to(self.g(), max_len)
            .into_iter()
            .map(|w| {
                let q = self.series_coeff(&w);
                (w, q)
            })
            .filter(|(_, q)| !q.is_zero())
            .collect()
    }
}

/// Evaluates a realization at a matrix point.
pub fn eval_realization(r: &Realization, x: &MatTuple) -> Result<QMatrix, RealizationError> {
    r.eval(x)
}

#[derive(Serialize, Deserialize)]
struct RealizationWire {
    g: usize,
    d: usize,
    #[serde(with = "serde_rat_vec")]
    alpha: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    c: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    b: Vec<Rat>,
    #[serde(rename = "A")]
    a: Vec<QMatrix>,
}

impl From<Realization> for RealizationWire {
    fn from(r: Realization) -> Self {
        RealizationWire {
            g: r.g(),
            d: r.size(),
            alpha: r.alpha,
            c: r.c,
            b: r.b,
            a: r.a,
        }
    }
}

impl TryFrom<RealizationWire> for Realization {
    type Error = RealizationError;
    fn try_from(w: RealizationWire) -> Result<Self, RealizationError> {
        if w.alpha.len() != w.g {
            return Err(RealizationError::Malformed(format!(
                "alpha has length {} but g = {}",
                w.alpha.len(),
                w.g
            )));
        }
        if w.c.len() != w.d {
            return Err(RealizationError::Malformed(format!(
                "c has length {} but d = {}",
                w.c.len(),
                w.d
            )));
        }
        Realization::new(w.alpha, w.c, w.a, w.b)
    }
}
