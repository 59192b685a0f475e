// SPDX-License-Identifier: Apache-2.0

use super::*;
use crate::expr::{eval_expr, parse};
use num_traits::Zero;
use crate::linalg::{frac, rat, MatTuple, QMatrix};
use crate::random::{random_expr, random_invertible, random_tuple};
use crate::symbolic::{edom_member, generic_eval, SymbolicLimits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EX21: &str = "(1 - x1)*x2*(1 - x1)^-1";

fn ex21() -> PencilDomain {
    pencil_domain(&parse(EX21, 2).unwrap(), &[rat(0), rat(0)]).unwrap()
}

fn schur() -> Expr {
    parse(SCHUR_INVERSE, 4).unwrap()
}

fn pt(v: &[i64]) -> MatTuple {
    MatTuple::scalar_point(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>())
}

fn poly(text: &str) -> NcPoly {
    NcPoly::from_expr(&parse(text, 4).unwrap()).unwrap()
}

#[test]
fn scalar_point_search() {
    let s = PointSearch::default();
    assert_eq!(
        find_scalar_point(&parse(EX21, 2).unwrap(), 2, &s),
        Some(vec![rat(0), rat(0)])
    );
    assert_eq!(
        find_scalar_point(&schur(), 4, &s),
        Some(vec![rat(1), rat(0), rat(0), rat(1)])
    );
    let small = PointSearch { seed: 3, budget: 500 };
    assert_eq!(
        find_scalar_point(&parse("(x1*x2 - x2*x1)^-1", 2).unwrap(), 2, &small),
        None
    );
    let e = parse("(x1 - 1/3)^-1 * (x1 - 1)^-1 * (x1 + 1)^-1 * x1^-1", 1).unwrap();
    assert_eq!(find_scalar_point(&e, 1, &s), Some(vec![rat(2)]));
}

#[test]
fn pencil_examples() {
    let pd = ex21();
    for (a, b) in [(2, 5), (-3, 1), (0, 0)] {
        let det = pd.realization.pencil_det(&pt(&[a, b])).unwrap();
        assert_eq!(det, rat(1 - a));
    }
    let pd = pencil_domain(&schur(), &[rat(1), rat(0), rat(0), rat(1)]).unwrap();
    assert_eq!(pd.realization.size(), 2);
    for v in [[2, 3, 5, 7], [0, 1, 1, 0], [1, 1, 1, 1]] {
        let det = pd.realization.pencil_det(&pt(&v)).unwrap();
        assert_eq!(det, rat(v[0] * v[3] - v[1] * v[2]));
    }
    let x = |i| crate::symbolic::MPoly::var(4, i);
    assert_eq!(pd.scalar_det(), x(0).mul(&x(3)).sub(&x(1).mul(&x(2))));
    let one_minus_x1 = crate::symbolic::MPoly::one(2).sub(&crate::symbolic::MPoly::var(2, 0));
    let ex = ex21().scalar_det();
    assert_eq!(ex.scale(&ex.constant_coeff().recip()), one_minus_x1);
    let pd = pencil_domain(&parse("7/2", 2).unwrap(), &[rat(0), rat(0)]).unwrap();
    assert!(pd.realization.size() <= 1);
    assert!(pd.contains(&pt(&[1, 1])).unwrap());
}

#[test]
fn contains_examples() {
    let pd = ex21();
    assert!(!pd.contains(&pt(&[1, 7])).unwrap());
    assert!(!pd.contains(&pt(&[1, 1])).unwrap());
    let ge = generic_eval(&parse(EX21, 2).unwrap(), 2, 1, &SymbolicLimits::default()).unwrap();
    assert!(edom_member(&ge, &pt(&[1, 1])).unwrap());
    assert!(matches!(
        pd.contains(&pt(&[1])),
        Err(DomainError::PointMismatch { .. })
    ));
}

#[test]
fn contains_direct_sums_and_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let pd = ex21();
    for _ in 0..20 {
        let x = random_tuple(&mut rng, 2, 2, 2);
        let y = random_tuple(&mut rng, 1, 2, 2);
        let both = pd.contains(&x).unwrap() && pd.contains(&y).unwrap();
        assert_eq!(pd.contains(&x.direct_sum(&y)).unwrap(), both);
        assert_eq!(pd.contains(&x.ampliate(2)).unwrap(), pd.contains(&x).unwrap());
        let s = random_invertible(&mut rng, 2, 3);
        assert_eq!(pd.contains(&x.conjugate(&s).unwrap()).unwrap(), pd.contains(&x).unwrap());
    }
}

#[test]
fn base_point_invariance() {
    let e = parse("(1 + x1*x2)^-1 - x2*(3 - x1)^-1", 2).unwrap();
    let p0 = pencil_domain(&e, &[rat(0), rat(0)]).unwrap();
    let p1 = pencil_domain(&e, &[rat(2), frac(1, 2)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let x = random_tuple(&mut rng, 2, 2, 3);
        assert_eq!(p0.contains(&x).unwrap(), p1.contains(&x).unwrap());
    }
}

#[test]
fn witness_example_21_nilpotent() {
    let pd = ex21();
    let x1 = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
    let x2 = QMatrix::from_i64(&[&[1, 0], &[0, 2]]);
    let x = MatTuple::new(2, vec![x1, x2]).unwrap();
    let w = witness(&pd, &x).unwrap();
    let expected = QMatrix::from_i64(&[&[1, -1], &[0, 2]]);
    assert_eq!(eval_expr(&w.expr, &x).unwrap(), expected);
    assert_eq!(pd.realization.eval(&x).unwrap(), expected);
}

#[test]
fn witness_base_case() {
    let e = parse("(1 - x1)^-1", 1).unwrap();
    let pd = pencil_domain(&e, &[rat(0)]).unwrap();
    assert_eq!(pd.realization.size(), 1);
    let x = MatTuple::new(2, vec![QMatrix::from_i64(&[&[3, 1], &[0, 5]])]).unwrap();
    let w = witness(&pd, &x).unwrap();
    assert!(w.expr.has_inverse());
    assert_eq!(eval_expr(&w.expr, &x).unwrap(), pd.realization.eval(&x).unwrap());
    let one = pt(&[1]);
    assert!(matches!(witness(&pd, &one), Err(DomainError::NotInDomain)));
}

#[test]
fn witness_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for _ in 0..30 {
        let e = random_expr(&mut rng, 2, 3);
        let Some(alpha) = find_scalar_point(&e, 2, &PointSearch::default()) else { continue };
        let pd = pencil_domain(&e, &alpha).unwrap();
        let x = random_tuple(&mut rng, 2, 2, 2);
        if !pd.contains(&x).unwrap() {
            continue;
        }
        let w = witness(&pd, &x).unwrap();
        assert_eq!(
            eval_expr(&w.expr, &x).unwrap(),
            pd.realization.eval(&x).unwrap(),
            "{e}"
        );
        if let Ok(v) = eval_expr(&e, &x) {
            assert_eq!(v, pd.realization.eval(&x).unwrap());
        }
        checked += 1;
    }
    assert!(checked >= 10, "{checked}");
}

#[test]
fn soundness_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let e = random_expr(&mut rng, 2, 3);
        let Some(alpha) = find_scalar_point(&e, 2, &PointSearch::default()) else { continue };
        let pd = pencil_domain(&e, &alpha).unwrap();
        for _ in 0..5 {
            let x = random_tuple(&mut rng, 2, 2, 2);
            if eval_expr(&e, &x).is_ok() {
                assert!(pd.contains(&x).unwrap(), "{e}");
            }
        }
    }
}

#[test]
fn counterexample_x1() {
    let cd = build_counterexample(&poly("x1")).unwrap();
    assert_eq!(cd.size(), 4);
    assert_eq!((cd.m, cd.n), (0, 3));
    assert_eq!(cd.basis_words, vec![vec![], vec![1], vec![2], vec![3]]);
    assert!(cd.h.iter().all(Zero::is_zero));
    assert!(cd.x.get(0).is_zero());
    let reports = verify_counterexample(&cd);
    assert!(reports.iter().all(|r| r.pass), "{reports:?}");
}

#[test]
fn counterexample_permuted() {
    let cd = build_counterexample(&poly("x4")).unwrap();
    assert_eq!(cd.permutation, [3, 2, 1, 0]);
    assert!(verify_counterexample(&cd).iter().all(|r| r.pass));
    let cd = build_counterexample(&poly("x2*x3 + 2*x1")).unwrap();
    assert_eq!(cd.permutation, [1, 0, 3, 2]);
    assert!(verify_counterexample(&cd).iter().all(|r| r.pass));
}

#[test]
fn counterexample_degree_two() {
    let cd = build_counterexample(&poly("x1*x2")).unwrap();
    assert_eq!(cd.u0, vec![1]);
    assert_eq!((cd.m, cd.n, cd.size()), (4, 15, 20));
    let reports = verify_counterexample(&cd);
    assert!(reports.iter().all(|r| r.pass), "{reports:?}");
    let cd = build_counterexample(&poly("x1*x2 - x2*x1 + x1")).unwrap();
    assert!(verify_counterexample(&cd).iter().all(|r| r.pass));
    let cd = build_counterexample(&poly("3*x1*x1 - x3 + 1/2")).unwrap();
    assert_eq!(cd.normalized.coeff(&[0, 0]), rat(1));
    assert!(verify_counterexample(&cd).iter().all(|r| r.pass));
}

#[test]
fn counterexample_rejections() {
    assert!(matches!(
        build_counterexample(&poly("5")),
        Err(DomainError::ConstantPolynomial)
    ));
    assert!(matches!(
        NcPoly::from_expr(&parse("x1^-1", 1).unwrap()),
        Err(DomainError::NotPolynomial { .. })
    ));
}

#[test]
fn shift_inclusion() {
    let pd = ex21();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let samples: Vec<MatTuple> = (0..30).map(|_| random_tuple(&mut rng, 2, 2, 2)).collect();
    let report = shift_domain_inclusion_check(&pd, 1, &samples).unwrap();
    assert!(report.pass, "{report:?}");
    let shifted = pd.realization.left_shift(1);
    let target = pencil_domain(&parse("(1 - x1)^-1", 2).unwrap(), &[rat(0), rat(0)]).unwrap();
    for x in &samples {
        assert_eq!(
            PencilDomain::from_realization(shifted.clone()).contains(x).unwrap(),
            target.contains(x).unwrap()
        );
    }
    let pd = pencil_domain(&parse("x1", 2).unwrap(), &[rat(0), rat(0)]).unwrap();
    let report = shift_domain_inclusion_check(&pd, 1, &samples).unwrap();
    assert!(report.pass);
    assert!(report.detail.contains("size 0"));
}

#[test]
fn witness_at_counterexample_point() {
    let cd = build_counterexample(&poly("x1")).unwrap();
    let pd = pencil_domain(&schur(), &[rat(1), rat(0), rat(0), rat(1)]).unwrap();
    let w = witness(&pd, &cd.x).unwrap();
    assert!(eval_expr(&schur(), &cd.x).is_err());
    assert_eq!(eval_expr(&w.expr, &cd.x).unwrap(), pd.realization.eval(&cd.x).unwrap());
}
