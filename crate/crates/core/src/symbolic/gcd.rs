// SPDX-License-Identifier: Apache-2.0

//! Multivariate gcd by recursion on the lowest-index variable, with
//! subresultant remainder sequences in the main variable.

use super::MPoly;
use crate::linalg::Rat;
use num_traits::{One, Zero};

type UPolyOver = Vec<MPoly>;

fn trim(p: &mut UPolyOver) {
    while p.last().is_some_and(MPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &UPolyOver) -> usize {
    p.len() - 1
}

fn lc(p: &UPolyOver) -> &MPoly {
    p.last().expect("nonzero univariate polynomial")
}

/// Pseudo-remainder `lc(q)^(deg f - deg q + 1) f mod q`.
fn prem(f: &UPolyOver, q: &UPolyOver) -> UPolyOver {
    let n = deg(q);
    let m = deg(f);
    let lcq = lc(q).clone();
    let mut r = f.clone();
    let mut steps = 0u32;
    while !r.is_empty() && deg(&r) >= n {
        let lr = lc(&r).clone();
        let shift = deg(&r) - n;
        for c in r.iter_mut() {
            *c = c.mul(&lcq);
        }
        for (i, qc) in q.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(qc));
        }
        trim(&mut r);
        steps += 1;
    }
    let extra = (m - n + 1) as u32 - steps;
    if extra > 0 {
        let k = lcq.pow(extra);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let nvars = coeffs[0].nvars();
    let mut g = MPoly::zero(nvars);
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_all(coeffs: &[MPoly], d: &MPoly) -> UPolyOver {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("exact division by content"))
        .collect()
}

/// Gcd of two primitive univariate polynomials of positive degree, up to a
/// factor free of the main variable.
fn subresultant(a: &UPolyOver, b: &UPolyOver) -> UPolyOver {
    let nvars = a[0].nvars();
    let (mut f, mut q) = if deg(a) >= deg(b) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = MPoly::one(nvars);
    let mut h = MPoly::one(nvars);
    loop {
        let delta = (deg(&f) - deg(&q)) as u32;
        let r = prem(&f, &q);
        if r.is_empty() {
            return q;
        }
        if deg(&r) == 0 {
            return vec![MPoly::one(nvars)];
        }
        let divisor = g.mul(&h.pow(delta));
        f = q;
        q = div_all(&r, &divisor);
        g = lc(&f).clone();
        if delta != 0 {
            h = g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
    }
}

/// Degree of the gcd of two univariate polynomials over ℚ.
fn univariate_gcd_degree(a: &[Rat], b: &[Rat]) -> usize {
    let mut a: Vec<Rat> = a.to_vec();
    let mut b: Vec<Rat> = b.to_vec();
    let trim = |p: &mut Vec<Rat>| {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let f = a.last().expect("nonempty") / b.last().expect("nonempty");
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = &f * bc;
                a[i + shift] -= t;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on the degree of `gcd(a, b)` in `v`, from specializations of
/// the remaining variables that keep both leading coefficients alive.
fn degree_bound(a: &MPoly, b: &MPoly, v: usize) -> usize {
    let da = a.degree_in(v) as usize;
    let db = b.degree_in(v) as usize;
    let nvars = a.nvars();
    let mut best = da.min(db);
    for seed in 0..3u64 {
        let point: Vec<Rat> = (0..nvars as u64)
            .map(|i| {
                let h = (i + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (seed + 1).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                Rat::from_integer((((h >> 33) % 41) as i64 - 20).into())
            })
            .collect();
        let sa = a.specialize_except(v, &point);
        let sb = b.specialize_except(v, &point);
        if sa[da].is_zero() || sb[db].is_zero() {
            continue;
        }
        best = best.min(univariate_gcd_degree(&sa, &sb));
        if best == 0 {
            break;
        }
    }
    best
}

/// Greatest common divisor, normalized monic in graded-lex order.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    assert_eq!(a.nvars(), b.nvars(), "gcd arity");
    let nvars = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(nvars);
    }
    if a == b {
        return a.monic();
    }
    let used_a = a.vars_used();
    let used_b = b.vars_used();
    // A variable occurring on one side only cannot occur in the gcd.
    if let Some(&v) = used_b.iter().find(|v| !used_a.contains(v)) {
        return gcd_with_coefficients(a, &b.to_univariate(v));
    }
    if let Some(&v) = used_a.iter().find(|v| !used_b.contains(v)) {
        return gcd_with_coefficients(b, &a.to_univariate(v));
    }
    let mut main = None;
    for &v in &used_a {
        if degree_bound(a, b, v) == 0 {
            // The gcd is free of v, so it divides every v-coefficient.
            return gcd_with_coefficients(a, &b.to_univariate(v));
        }
        let d = a.degree_in(v).max(b.degree_in(v));
        if main.is_none_or(|(_, best)| d < best) {
            main = Some((v, d));
        }
    }
    let (v, _) = main.expect("shared variable");
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let gc = gcd(&ca, &cb);
    let pa = div_all(&ua, &ca);
    let pb = div_all(&ub, &cb);
    let gp = subresultant(&pa, &pb);
    let gp = if gp.len() > 1 {
        let c = content(&gp);
        div_all(&gp, &c)
    } else {
        vec![MPoly::one(nvars)]
    };
    let out = gc.mul(&MPoly::from_univariate(nvars, v, &gp)).monic();
    debug_assert!(!out.is_zero() && out.leading_coeff().is_one());
    out
}

/// `gcd(a, c₀, c₁, …)`, stopping early once it reaches 1.
fn gcd_with_coefficients(a: &MPoly, coeffs: &[MPoly]) -> MPoly {
    let mut sorted: Vec<&MPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| (c.total_degree(), c.num_terms()));
    let mut g = a.clone();
    for c in sorted {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g.monic()
}

pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.nvars());
    }
    let g = gcd(a, b);
    a.div_exact(&g)
        .expect("gcd divides")
        .mul(b)
        .monic()
}
