// SPDX-License-Identifier: Apache-2.0

use super::{gcd, MPoly, SymbolicError};
use crate::linalg::Rat;
use num_traits::Zero;

/// Reduced quotient of polynomials: `gcd(num, den) = 1` and `den` is monic
/// in graded-lex order. Equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MRatFn {
    num: MPoly,
    den: MPoly,
}

impl MRatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.nvars()));
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::from_coprime(num, den))
    }

    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        let inv = lc.recip();
        MRatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::poly(MPoly::zero(nvars))
    }

    pub fn constant(nvars: usize, q: Rat) -> Self {
        Self::poly(MPoly::constant(nvars, q))
    }

    pub fn poly(p: MPoly) -> Self {
        let nvars = p.nvars();
        MRatFn {
            num: p,
            den: MPoly::one(nvars),
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let g = gcd(&self.den, &other.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d).add(&other.num.mul(&b));
        Self::new(num, b.mul(&other.den)).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        MRatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num.nvars());
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let num = self
            .num
            .div_exact(&g1)
            .expect("gcd divides")
            .mul(&other.num.div_exact(&g2).expect("gcd divides"));
        let den = self
            .den
            .div_exact(&g2)
            .expect("gcd divides")
            .mul(&other.den.div_exact(&g1).expect("gcd divides"));
        Self::from_coprime(num, den)
    }

    pub fn inv(&self) -> Result<Self, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// Value at a point, or `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }
}
