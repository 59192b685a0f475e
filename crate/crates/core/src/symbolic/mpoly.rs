// SPDX-License-Identifier: Apache-2.0

//! Sparse multivariate polynomials over ℚ.

use crate::linalg::rat::{format_rat, JsonRat};
use crate::linalg::Rat;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` commuting variables; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, q: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !q.is_zero() {
            p.terms.insert(Monomial::one(nvars), q);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        Self::term(m, Rat::one())
    }

    pub fn term(m: Monomial, q: Rat) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !q.is_zero() {
            p.terms.insert(m, q);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, q) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, q);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.leading_coeff().is_one()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Leading coefficient (graded lex); zero for the zero polynomial.
    pub fn leading_coeff(&self) -> Rat {
        self.leading().map_or_else(Rat::zero, |(_, q)| q.clone())
    }

    pub fn constant_coeff(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, q: Rat) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(q);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), -q);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                out.add_term(m1.mul(m2), q1 * q2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Scales so the graded-lex leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, q)) if !q.is_one() => self.scale(&q.recip()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm_d, lc_d) = d.leading()?;
        if d.terms.len() == 1 && lm_d.degree() == 0 {
            return Some(self.scale(&lc_d.recip()));
        }
        let lc_d_inv = lc_d.recip();
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading() {
            if !lm_d.divides(lm_r) {
                return None;
            }
            let t = Self::term(lm_r.div(lm_d), lc_r * &lc_d_inv);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut acc = Rat::zero();
        for (m, q) in &self.terms {
            let mut t = q.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]` (all in a ring of `target_nvars` variables).
    pub fn substitute(&self, images: &[MPoly], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Self::zero(target_nvars);
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        for (m, q) in &self.terms {
            let mut t = Self::constant(target_nvars, q.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().expect("nonempty").mul(&images[v]);
                    powers[v].push(next);
                }
                t = t.mul(&powers[v][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Univariate coefficients in variable `v` after substituting
    /// `point[i]` for every other variable, lowest power first.
    pub fn specialize_except(&self, v: usize, point: &[Rat]) -> Vec<Rat> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(v) as usize + 1];
        for (m, q) in &self.terms {
            let mut t = q.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if i != v && e > 0 {
                    t *= num_traits::pow::pow(point[i].clone(), e as usize);
                }
            }
            coeffs[m.0[v] as usize] += t;
        }
        coeffs
    }

    /// Coefficients with respect to variable `v`, lowest power first; each
    /// coefficient is free of `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v) as usize;
        let mut coeffs = vec![Self::zero(self.nvars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, q) in &self.terms {
            let e = m.0[v] as usize;
            let mut rest = m.clone();
            rest.0[v] = 0;
            coeffs[e].add_term(rest, q.clone());
        }
        coeffs
    }

    pub fn from_univariate(nvars: usize, v: usize, coeffs: &[MPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, q) in &c.terms {
                let mut mm = m.clone();
                mm.0[v] += e as u32;
                out.add_term(mm, q.clone());
            }
        }
        out
    }

    /// Human-readable form using the given variable names.
    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                .collect();
            let neg = q.is_negative();
            let abs = q.abs();
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => format_rat(&abs),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", format_rat(&abs), mono.join("*")),
            };
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exponents: Vec<u32>,
    coefficient: JsonRat,
}

impl Serialize for MPoly {
    /// A list of `{exponents, coefficient}` in descending graded-lex order.
    /// The zero polynomial is written as one zero term so the arity survives.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_zero() {
            return s.collect_seq([TermWire {
                exponents: vec![0; self.nvars],
                coefficient: JsonRat(Rat::zero()),
            }]);
        }
        s.collect_seq(self.terms.iter().rev().map(|(m, q)| TermWire {
            exponents: m.0.clone(),
            coefficient: JsonRat(q.clone()),
        }))
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<TermWire> = Vec::deserialize(d)?;
        let Some(first) = terms.first() else {
            return Err(serde::de::Error::custom(
                "empty term list: variable count is unknown",
            ));
        };
        let nvars = first.exponents.len();
        if terms.iter().any(|t| t.exponents.len() != nvars) {
            return Err(serde::de::Error::custom("terms disagree on variable count"));
        }
        Ok(MPoly::from_terms(
            nvars,
            terms.into_iter().map(|t| (Monomial(t.exponents), t.coefficient.0)),
        ))
    }
}

/// Determinant of a square matrix of polynomials (fraction-free Bareiss
/// elimination; every division is exact).
pub fn det_poly(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let d = m.len();
    if d == 0 {
        return MPoly::one(nvars);
    }
    let mut a: Vec<Vec<MPoly>> = m.to_vec();
    let mut sign = Rat::one();
    let mut prev = MPoly::one(nvars);
    for k in 0..d - 1 {
        let Some(p) = (k..d).find(|&r| !a[r][k].is_zero()) else {
            return MPoly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    a[d - 1][d - 1].scale(&sign)
}
