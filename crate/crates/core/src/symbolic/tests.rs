// SPDX-License-Identifier: Apache-2.0

use super::*;
use crate::expr::{eval_expr, parse};
use crate::linalg::{frac, rat, MatTuple, QMatrix, Rat};
use crate::random::{random_expr, random_tuple};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EX21: &str = "(1 - x1)*x2*(1 - x1)^-1";

fn x(nv: usize, i: usize) -> MPoly {
    MPoly::var(nv, i)
}

fn c(nv: usize, q: i64) -> MPoly {
    MPoly::constant(nv, rat(q))
}

fn lim() -> SymbolicLimits {
    SymbolicLimits::default()
}

fn names1(i: usize) -> String {
    generic_var_name(1, i)
}

#[test]
fn gcd_basics() {
    let xi = x(1, 0);
    let a = xi.mul(&xi).sub(&c(1, 1));
    let b = xi.sub(&c(1, 1));
    assert_eq!(gcd(&a, &b), b);
    assert_eq!(gcd(&a, &c(1, 1)), c(1, 1));
    assert_eq!(gcd(&a.scale(&rat(6)), &b.scale(&rat(-4))), b);
}

#[test]
fn gcd_multivariate() {
    let nv = 3;
    let (a, b, z) = (x(nv, 0), x(nv, 1), x(nv, 2));
    let common = a.mul(&b).sub(&z).add(&c(nv, 2));
    let f = common.mul(&a.add(&z)).mul(&b);
    let g = common.mul(&a.sub(&b)).mul(&b).mul(&b);
    assert_eq!(gcd(&f, &g), common.mul(&b).monic());
    assert_eq!(gcd(&a.add(&b), &a.sub(&b)), c(nv, 1));
}

#[test]
fn ratfn_cancels_example_21() {
    let nv = 2;
    let one_minus = c(nv, 1).sub(&x(nv, 0));
    let f = MRatFn::new(one_minus.mul(&x(nv, 1)), one_minus).unwrap();
    assert_eq!(f.num(), &x(nv, 1));
    assert_eq!(f.den(), &c(nv, 1));
}

#[test]
fn ratfn_division_by_zero() {
    assert!(matches!(
        MRatFn::new(c(1, 1), MPoly::zero(1)),
        Err(SymbolicError::DivisionByZero)
    ));
    assert!(MRatFn::zero(1).inv().is_err());
}

#[test]
fn generic_example_21() {
    let e = parse(EX21, 2).unwrap();
    let ge = generic_eval(&e, 2, 1, &lim()).unwrap();
    assert_eq!(ge.entries[0][0], MRatFn::poly(x(2, 1)));
    assert!(ge.denom_lcm.is_one());
}

#[test]
fn generic_inverse_2x2() {
    let e = parse("x1^-1", 1).unwrap();
    let ge = generic_eval(&e, 1, 2, &lim()).unwrap();
    let det = x(4, 0).mul(&x(4, 3)).sub(&x(4, 1).mul(&x(4, 2)));
    assert_eq!(ge.denom_lcm, det);
    assert_eq!(ge.denom_lcm.total_degree(), 2);
}

#[test]
fn generic_one_minus_inverse() {
    let e = parse("(1-x1)^-1", 1).unwrap();
    let ge = generic_eval(&e, 1, 1, &lim()).unwrap();
    assert_eq!(ge.denom_lcm, x(1, 0).sub(&c(1, 1)));
}

#[test]
fn generic_degenerate() {
    let e = parse("(x1*x2 - x2*x1)^-1", 2).unwrap();
    assert!(matches!(
        generic_eval(&e, 2, 1, &lim()),
        Err(SymbolicError::DegenerateAtSizeN { n: 1, .. })
    ));
    assert!(generic_eval(&e, 2, 2, &lim()).is_ok());
}

#[test]
fn generic_limits() {
    let e = parse("x1 + x2", 2).unwrap();
    assert!(matches!(
        generic_eval(&e, 2, 3, &lim()),
        Err(SymbolicError::SymbolicSizeLimit { what: "variables", .. })
    ));
    let small = SymbolicLimits {
        max_vars: 16,
        max_degree: 3,
    };
    let e = parse("x1*x1*x1*x1", 1).unwrap();
    assert!(matches!(
        generic_eval(&e, 1, 1, &small),
        Err(SymbolicError::SymbolicSizeLimit { what: "degree", .. })
    ));
}

#[test]
fn edom_example_21() {
    let e = parse(EX21, 2).unwrap();
    let ge2 = generic_eval(&e, 2, 2, &lim()).unwrap();
    let p = QMatrix::diag(&[rat(1), rat(0)]);
    let x1 = MatTuple::new(2, vec![p.clone(), p]).unwrap();
    assert!(!edom_member(&ge2, &x1).unwrap());
    let id = QMatrix::identity(2);
    let x2 = MatTuple::new(2, vec![id.clone(), id]).unwrap();
    assert!(!edom_member(&ge2, &x2).unwrap());
    let ge1 = generic_eval(&e, 2, 1, &lim()).unwrap();
    assert!(edom_member(&ge1, &MatTuple::scalar_point(&[rat(1), rat(1)])).unwrap());
    assert!(edom_member(&ge1, &MatTuple::scalar_point(&[rat(0), rat(0)])).unwrap());
    assert!(matches!(
        edom_member(&ge1, &x2),
        Err(SymbolicError::SizeMismatch { .. })
    ));
}

#[test]
fn factorization_example_21() {
    let e = parse(EX21, 2).unwrap();
    let f = direct_sum_factorization(&e, 2, 1, &lim()).unwrap();
    let one_minus = |v: usize| x(4, v).sub(&c(4, 1));
    // ξ′ is variable 0 (x1 entry of Ξ′), ξ″ is variable 2 (x1 entry of Ξ″).
    assert_eq!(f.block_diagonal, one_minus(0).mul(&one_minus(2)));
    assert_eq!(f.p1, x(2, 0).sub(&c(2, 1)));
    assert_eq!(f.p2, x(2, 0).sub(&c(2, 1)));
    assert_eq!(f.p1.display_with(&names1), "xi_1_1_1 - 1");
}

#[test]
fn factorization_trivial_cases() {
    let f = direct_sum_factorization(&parse("3", 1).unwrap(), 1, 1, &lim()).unwrap();
    assert!(f.p1.is_one() && f.p2.is_one());
    let f = direct_sum_factorization(&parse("x1^-1", 1).unwrap(), 1, 1, &lim()).unwrap();
    assert_eq!(f.p1, x(1, 0));
    assert_eq!(f.p2, x(1, 0));
}

#[test]
fn factorization_product_identity() {
    let e = parse("(1 + x1*x2)^-1 + (x1 - x2)^-1*x1 + (1 + x1*x1)^-1", 2).unwrap();
    let f = direct_sum_factorization(&e, 2, 1, &lim()).unwrap();
    let p1 = f.p1.substitute(&[x(4, 0), x(4, 1)], 4);
    let p2 = f.p2.substitute(&[x(4, 2), x(4, 3)], 4);
    assert_eq!(p1.mul(&p2), f.block_diagonal);
}

#[test]
fn factorization_needs_nonempty_domain() {
    let e = parse("(x1*x2 - x2*x1)^-1", 2).unwrap();
    assert!(matches!(
        direct_sum_factorization(&e, 2, 1, &lim()),
        Err(SymbolicError::DegenerateAtSizeN { n: 1, .. })
    ));
}

#[test]
fn probe_examples() {
    let e = parse(EX21, 2).unwrap();
    let one = MatTuple::scalar_point(&[rat(1), rat(1)]);
    assert_eq!(
        ampliation_probe(&e, &one, 2, &lim()).unwrap(),
        vec![(1, true), (2, false)]
    );
    let zero = MatTuple::scalar_point(&[rat(0), rat(0)]);
    assert_eq!(
        ampliation_probe(&e, &zero, 2, &lim()).unwrap(),
        vec![(1, true), (2, true)]
    );
    let poly = parse("x1*x2 - 3*x2*x2*x1 + 1/2", 2).unwrap();
    let pt = MatTuple::scalar_point(&[frac(-7, 3), rat(5)]);
    assert!(ampliation_probe(&poly, &pt, 2, &lim())
        .unwrap()
        .iter()
        .all(|(_, m)| *m));
}

#[test]
fn mpoly_json_round_trip() {
    let p = x(2, 0).mul(&x(2, 1)).scale(&frac(-3, 2)).add(&c(2, 4));
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(
        s,
        r#"[{"exponents":[1,1],"coefficient":"-3/2"},{"exponents":[0,0],"coefficient":"4"}]"#
    );
    let back: MPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    let z: MPoly = serde_json::from_str(&serde_json::to_string(&MPoly::zero(3)).unwrap()).unwrap();
    assert_eq!(z, MPoly::zero(3));
}

fn small_mpoly(nv: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nv), -3i64..4), 0..4).prop_map(
        move |terms| MPoly::from_terms(nv, terms.into_iter().map(|(e, q)| (Monomial(e), rat(q)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_is_maximal(a in small_mpoly(3), b in small_mpoly(3), k in small_mpoly(3)) {
        prop_assume!(!k.is_zero());
        let fa = a.mul(&k);
        let fb = b.mul(&k);
        let g = gcd(&fa, &fb);
        if !fa.is_zero() || !fb.is_zero() {
            prop_assert!(fa.div_exact(&g).is_some());
            prop_assert!(fb.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&k).is_some());
            prop_assert_eq!(g.leading_coeff(), rat(1));
        }
    }

    #[test]
    fn normalization_is_confluent(a in small_mpoly(2), b in small_mpoly(2), d in small_mpoly(2)) {
        prop_assume!(!d.is_zero() && !b.is_zero());
        let f = MRatFn::new(a.clone(), d.clone()).unwrap();
        let g = MRatFn::new(b.clone(), d.clone()).unwrap();
        let direct = MRatFn::new(a.add(&b), d.clone()).unwrap();
        prop_assert_eq!(f.add(&g), direct);
        let h = MRatFn::new(b.clone(), MPoly::one(2)).unwrap();
        let via_mul = f.mul(&h);
        let direct_mul = MRatFn::new(a.mul(&b), d.clone()).unwrap();
        prop_assert_eq!(via_mul.clone(), direct_mul);
        prop_assert_eq!(via_mul.mul(&h.inv().unwrap()), f);
    }
}

fn random_cases(seed: u64, count: usize) -> Vec<(crate::Expr, MatTuple)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let e = random_expr(&mut rng, 2, 3);
            let x = random_tuple(&mut rng, 2, 2, 2);
            (e, x)
        })
        .collect()
}

#[test]
fn generic_agrees_with_numeric() {
    let mut checked = 0;
    for (e, x) in random_cases(11, 40) {
        let Ok(num) = eval_expr(&e, &x) else { continue };
        let ge = match generic_eval(&e, 2, 2, &lim()) {
            Ok(ge) => ge,
            Err(SymbolicError::SymbolicSizeLimit { .. }) => continue,
            Err(err) => panic!("{err} for {e}"),
        };
        assert_eq!(ge.eval_at(&x).unwrap(), Some(num), "{e}");
        assert!(edom_member(&ge, &x).unwrap());
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} cases checked");
}

#[test]
fn ampliation_membership_implies_base_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..40 {
        let e = random_expr(&mut rng, 2, 3);
        let x = random_tuple(&mut rng, 1, 2, 2);
        let Ok(table) = ampliation_probe(&e, &x, 2, &lim()) else { continue };
        if table[1].1 {
            assert!(table[0].1, "{e}");
        }
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn var_names() {
    assert_eq!(generic_var_name(2, generic_var(2, 3, 0, 1)), "xi_4_1_2");
    let p: Rat = MPoly::var(4, 3).eval(&[rat(1), rat(2), rat(3), rat(4)]);
    assert_eq!(p, rat(4));
}

#[test]
fn bareiss_determinant() {
    let nv = 4;
    let m = vec![vec![x(nv, 0), x(nv, 1)], vec![x(nv, 2), x(nv, 3)]];
    assert_eq!(det_poly(&m, nv), x(nv, 0).mul(&x(nv, 3)).sub(&x(nv, 1).mul(&x(nv, 2))));
    let z = MPoly::zero(nv);
    let m = vec![
        vec![z.clone(), x(nv, 0), z.clone()],
        vec![x(nv, 1), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), c(nv, 2)],
    ];
    assert_eq!(det_poly(&m, nv), x(nv, 0).mul(&x(nv, 1)).scale(&rat(-2)));
    assert!(det_poly(&[], nv).is_one());
}
