//! Property tests for the forms layer and the exact linear algebra: algebraic
//! identities that must hold with no tolerance, plus the cross-check between
//! the Gauss-Jordan and fraction-free elimination routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

use apolar_core::forms::{
    apolar_apply, expand_power_sum, form_gcd, rat, squarefree_test, BinaryForm, DualForm,
    LinearForm, ProjectivePoint,
};
use apolar_core::linalg::{
    bareiss, intersect_subspaces, solve_linear, LinearSolution, RationalMatrix, SubspaceBasis,
};

fn arb_rat() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=4)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_form(degree: usize) -> impl Strategy<Value = BinaryForm> {
    vec(arb_rat(), degree + 1).prop_map(move |c| BinaryForm::new(degree, c).unwrap())
}

fn arb_dual(degree: usize) -> impl Strategy<Value = DualForm> {
    vec(arb_rat(), degree + 1).prop_map(move |c| DualForm::new(degree, c).unwrap())
}

fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        vec(arb_rat(), r * c).prop_map(move |e| RationalMatrix::new(r, c, e).unwrap())
    })
}

proptest! {
    #[test]
    fn apolar_bilinear_in_operator(
        d1 in arb_dual(2),
        d2 in arb_dual(2),
        f in arb_form(5),
        alpha in arb_rat(),
        beta in arb_rat(),
    ) {
        let lhs = apolar_apply(&d1.scaled(&alpha).add(&d2.scaled(&beta)).unwrap(), &f).unwrap();
        let rhs = apolar_apply(&d1, &f).unwrap().scaled(&alpha)
            .add(&apolar_apply(&d2, &f).unwrap().scaled(&beta)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apolar_bilinear_in_form(
        op in arb_dual(3),
        f in arb_form(6),
        g in arb_form(6),
        alpha in arb_rat(),
        beta in arb_rat(),
    ) {
        let lhs = apolar_apply(&op, &f.scaled(&alpha).add(&g.scaled(&beta)).unwrap()).unwrap();
        let rhs = apolar_apply(&op, &f).unwrap().scaled(&alpha)
            .add(&apolar_apply(&op, &g).unwrap().scaled(&beta)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apolar_degree_bookkeeping(op in arb_dual(2), f in arb_form(7)) {
        let out = apolar_apply(&op, &f).unwrap();
        prop_assert_eq!(out.degree(), 5);
    }

    #[test]
    fn apolar_composition_is_module_action(
        d1 in arb_dual(2),
        d2 in arb_dual(3),
        f in arb_form(8),
    ) {
        let nested = apolar_apply(&d1, &apolar_apply(&d2, &f).unwrap()).unwrap();
        let flat = apolar_apply(&d1.mul(&d2), &f).unwrap();
        prop_assert_eq!(nested, flat);
    }

    #[test]
    fn dual_point_annihilates_power(
        a in -9i64..=9,
        b in -9i64..=9,
        d in 1usize..=9,
    ) {
        prop_assume!(a != 0 || b != 0);
        let l = LinearForm::from_integers(a, b).unwrap();
        let f = expand_power_sum(d, &[(l.clone(), rat(3))]).unwrap();
        prop_assert!(apolar_apply(&l.annihilator(), &f).unwrap().is_zero());
    }

    #[test]
    fn product_with_common_factor_is_not_squarefree(
        a in -9i64..=9,
        b in -9i64..=9,
        c1 in arb_dual(2),
        c2 in arb_dual(1),
    ) {
        prop_assume!(a != 0 || b != 0);
        prop_assume!(!c1.is_zero() && !c2.is_zero());
        let l = DualForm::new(1, vec![rat(a), rat(b)]).unwrap();
        let d1 = l.mul(&c1);
        let d2 = l.mul(&c2);
        let g = form_gcd(&d1, &d2).unwrap();
        prop_assert!(g.degree() >= 1);
        prop_assert!(!squarefree_test(&d1.mul(&d2)).unwrap());
    }

    #[test]
    fn gcd_divides_both((da, db) in (arb_dual(4), arb_dual(3))) {
        prop_assume!(!da.is_zero() && !db.is_zero());
        let g = form_gcd(&da, &db).unwrap();
        // gcd(g, x) = g up to normalization exactly when g divides x
        prop_assert_eq!(form_gcd(&g, &da).unwrap(), g.normalized_primitive());
        prop_assert_eq!(form_gcd(&g, &db).unwrap(), g.normalized_primitive());
    }

    #[test]
    fn point_normalization_scale_invariant(
        p in arb_rat(),
        q in arb_rat(),
        num in -12i64..=12,
        den in 1i64..=5,
    ) {
        prop_assume!(!p.is_zero() || !q.is_zero());
        prop_assume!(num != 0);
        let lambda = BigRational::new(BigInt::from(num), BigInt::from(den));
        let x = ProjectivePoint::exact(p.clone(), q.clone()).unwrap();
        let y = ProjectivePoint::exact(&p * &lambda, &q * &lambda).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn linear_form_normalization_idempotent(a in arb_rat(), b in arb_rat()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let l = LinearForm::new(a, b).unwrap();
        let renorm = LinearForm::new(
            BigRational::from_integer(l.a().clone()),
            BigRational::from_integer(l.b().clone()),
        )
        .unwrap();
        prop_assert_eq!(l, renorm);
    }

    #[test]
    fn kernel_vectors_annihilate(m in arb_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn elimination_routes_agree(m in arb_matrix()) {
        prop_assert_eq!(m.rank(), bareiss::rank(&m));
        prop_assert_eq!(m.kernel(), bareiss::kernel(&m));
    }

    #[test]
    fn intersection_commutative_and_bounded(
        va in vec(vec(arb_rat(), 4), 1..=3),
        vb in vec(vec(arb_rat(), 4), 1..=3),
    ) {
        let a = SubspaceBasis::span(4, va).unwrap();
        let b = SubspaceBasis::span(4, vb).unwrap();
        let ab = intersect_subspaces(&[a.clone(), b.clone()]).unwrap();
        let ba = intersect_subspaces(&[b.clone(), a.clone()]).unwrap();
        prop_assert_eq!(&ab, &ba);
        // Grassmann bound
        let lower = a.dim() as i64 + b.dim() as i64 - 4;
        prop_assert!(ab.dim() as i64 >= lower);
        prop_assert!(ab.dim() <= a.dim().min(b.dim()));
        for v in ab.vectors() {
            prop_assert!(a.contains(v).unwrap());
            prop_assert!(b.contains(v).unwrap());
        }
    }

    #[test]
    fn intersection_associative(
        va in vec(vec(arb_rat(), 3), 1..=2),
        vb in vec(vec(arb_rat(), 3), 1..=2),
        vc in vec(vec(arb_rat(), 3), 1..=2),
    ) {
        let a = SubspaceBasis::span(3, va).unwrap();
        let b = SubspaceBasis::span(3, vb).unwrap();
        let c = SubspaceBasis::span(3, vc).unwrap();
        let left = intersect_subspaces(&[
            intersect_subspaces(&[a.clone(), b.clone()]).unwrap(),
            c.clone(),
        ])
        .unwrap();
        let right = intersect_subspaces(&[
            a.clone(),
            intersect_subspaces(&[b, c]).unwrap(),
        ])
        .unwrap();
        let flat = intersect_subspaces(&[a, right.clone()]).unwrap();
        prop_assert_eq!(&left, &right);
        // intersecting again with a member changes nothing
        prop_assert_eq!(&flat, &right);
    }

    #[test]
    fn solutions_substitute_back(m in arb_matrix(), coeffs in vec(arb_rat(), 6)) {
        // build a consistent right-hand side from a known solution
        let x: Vec<BigRational> = coeffs.into_iter().take(m.cols()).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x).unwrap();
        match solve_linear(&m, &b).unwrap() {
            LinearSolution::Solution(sol) => {
                prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
            }
            LinearSolution::Inconsistent { .. } => prop_assert!(false, "consistent by construction"),
        }
    }

    #[test]
    fn inconsistency_is_detected(m in arb_matrix(), coeffs in vec(arb_rat(), 6)) {
        let x: Vec<BigRational> = coeffs.into_iter().take(m.cols()).collect();
        prop_assume!(x.len() == m.cols());
        let mut b = m.mul_vec(&x).unwrap();
        // push the right-hand side off the column space along a left-kernel row
        let left = bareiss::kernel(&m.transpose());
        prop_assume!(left.dim() > 0);
        let w = &left.vectors()[0];
        for (bi, wi) in b.iter_mut().zip(w) {
            *bi += wi;
        }
        match solve_linear(&m, &b).unwrap() {
            LinearSolution::Inconsistent { .. } => {}
            LinearSolution::Solution(_) => prop_assert!(false, "inconsistent by construction"),
        }
    }
}

#[test]
fn expanded_quintic_combination_matches_naive_oracle() {
    // oracle: expand c*(a*x0 + b*x1)^d by repeated convolution
    fn naive(d: usize, terms: &[(i64, i64, i64)]) -> Vec<BigRational> {
        let mut total = vec![BigRational::zero(); d + 1];
        for &(a, b, c) in terms {
            let mut acc = vec![rat(1)];
            for _ in 0..d {
                let mut next = vec![BigRational::zero(); acc.len() + 1];
                for (i, v) in acc.iter().enumerate() {
                    next[i] += v * rat(a);
                    next[i + 1] += v * rat(b);
                }
                acc = next;
            }
            for (t, v) in total.iter_mut().zip(&acc) {
                *t += v * rat(c);
            }
        }
        total
    }

    let oracle = naive(5, &[(1, 0, -2), (0, 1, 2), (1, -1, 1)]);
    let built = expand_power_sum(
        5,
        &[
            (LinearForm::from_integers(1, 0).unwrap(), rat(-2)),
            (LinearForm::from_integers(0, 1).unwrap(), rat(2)),
            (LinearForm::from_integers(1, -1).unwrap(), rat(1)),
        ],
    )
    .unwrap();
    assert_eq!(built.coeffs(), &oracle[..]);
    assert_eq!(
        built,
        BinaryForm::from_integers(5, &[-1, -5, 10, -10, 5, 1]).unwrap()
    );
}
