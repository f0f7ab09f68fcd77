//! Invariants of the apolarity engine and the decomposer: inverse-system
//! dimensions, duality of membership, Hilbert-function symmetry, the
//! universal lower bounds, and round-trip checks on full decompositions.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use apolar_core::apolarity::{
    compute_kmin, inverse_system_component, kmin_formula, orthogonal_component, vsps,
};
use apolar_core::decompose::{
    binary_form_roots, decompose, solve_coefficients, verify_decomposition, Coefficients,
    DecomposeOutcome, RootSet, RECONSTRUCTION_TOL, ROOT_TOL,
};
use apolar_core::forms::{
    apolar_apply, expand_power_sum, rat, squarefree_test, BinaryForm, DualForm, LinearForm,
};

fn arb_rat() -> impl Strategy<Value = BigRational> {
    (-25i64..=25, 1i64..=3)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_form(degree: usize) -> impl Strategy<Value = BinaryForm> {
    vec(arb_rat(), degree + 1).prop_map(move |c| BinaryForm::new(degree, c).unwrap())
}

fn arb_dual(degree: usize) -> impl Strategy<Value = DualForm> {
    vec(arb_rat(), degree + 1).prop_map(move |c| DualForm::new(degree, c).unwrap())
}

proptest! {
    // dim (D^-1)_d = k for every nonzero D in T_k, squarefree or not
    #[test]
    fn inverse_system_dimension_is_k(
        (k, d) in (1usize..=6, 0usize..=4).prop_map(|(k, extra)| (k, k + extra)),
        coeffs in vec(arb_rat(), 7),
    ) {
        let op = DualForm::new(k, coeffs.into_iter().take(k + 1).collect()).unwrap();
        prop_assume!(!op.is_zero());
        let s = inverse_system_component(&op, d).unwrap();
        prop_assert_eq!(s.dim(), k);
    }

    // non-proportional operators have different inverse systems
    #[test]
    fn inverse_system_injective(
        k in 1usize..=5,
        extra in 0usize..=3,
        ca in vec(arb_rat(), 6),
        cb in vec(arb_rat(), 6),
    ) {
        let d = k + extra;
        let a = DualForm::new(k, ca.into_iter().take(k + 1).collect()).unwrap();
        let b = DualForm::new(k, cb.into_iter().take(k + 1).collect()).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assume!(a.normalized_primitive() != b.normalized_primitive());
        let sa = inverse_system_component(&a, d).unwrap();
        let sb = inverse_system_component(&b, d).unwrap();
        prop_assert!(sa.basis() != sb.basis());
    }

    // D annihilates every f_i iff every f_i lies in the inverse system of D
    #[test]
    fn membership_duality(
        f in arb_form(6),
        g in arb_form(6),
        op in arb_dual(3),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !op.is_zero());
        let annihilates =
            apolar_apply(&op, &f).unwrap().is_zero() && apolar_apply(&op, &g).unwrap().is_zero();
        let s = inverse_system_component(&op, 6).unwrap();
        let member = s.contains_form(&f).unwrap() && s.contains_form(&g).unwrap();
        prop_assert_eq!(annihilates, member);
    }

    // Hilbert-function symmetry of the apolar quotient
    #[test]
    fn gorenstein_symmetry(d in 1usize..=8, coeffs in vec(arb_rat(), 9)) {
        let f = BinaryForm::new(d, coeffs.into_iter().take(d + 1).collect()).unwrap();
        prop_assume!(!f.is_zero());
        for k in 0..=d {
            let a = orthogonal_component(&f, k).unwrap().dim() as i64;
            let b = orthogonal_component(&f, d - k).unwrap().dim() as i64;
            prop_assert_eq!((k as i64 + 1) - a, (d as i64 - k as i64 + 1) - b);
        }
    }

    // dim (f^perp)_k >= 2k - d for every nonzero f
    #[test]
    fn orthogonal_lower_bound(d in 1usize..=8, coeffs in vec(arb_rat(), 9)) {
        let f = BinaryForm::new(d, coeffs.into_iter().take(d + 1).collect()).unwrap();
        prop_assume!(!f.is_zero());
        for k in 0..=d {
            let dim = orthogonal_component(&f, k).unwrap().dim() as i64;
            prop_assert!(dim >= 2 * k as i64 - d as i64);
        }
    }

    // a nonzero slice stays nonzero one degree up (multiply by a linear form)
    #[test]
    fn nonzero_slice_propagates(
        f in arb_form(6),
        g in arb_form(6),
        k in 1usize..=5,
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let forms = vec![f, g];
        let Ok(v) = vsps(&forms, k, 11) else {
            return Ok(()); // dependent sample
        };
        prop_assume!(v.space.dim() > 0);
        let up = vsps(&forms, k + 1, 11).unwrap();
        prop_assert!(up.space.dim() > 0);
    }
}

#[test]
fn grassmann_bound_on_adversarial_monomials() {
    // any r monomials in any degree: the slice at the formula k is nonzero
    for d in 2..=9usize {
        for r in 1..=4.min(d) {
            let forms: Vec<BinaryForm> =
                (0..r).map(|i| BinaryForm::monomial(d, i).unwrap()).collect();
            let k = kmin_formula(d, r).unwrap();
            let v = vsps(&forms, k, 3).unwrap();
            assert!(v.space.dim() > 0, "monomial family d={d} r={r}");
        }
    }
    // repeated-root powers sharing a linear factor
    let f1 = BinaryForm::monomial(5, 0).unwrap(); // x0^5
    let f2 = BinaryForm::monomial(5, 1).unwrap(); // x0^4*x1
    let v = vsps(&[f1, f2], 4, 3).unwrap();
    assert!(v.space.dim() > 0);
}

#[test]
fn kmin_never_exceeds_socle_plus_one() {
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    for _ in 0..40 {
        let d = rng.gen_range(2..=7);
        let f = loop {
            let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
            let f = BinaryForm::from_integers(d, &coeffs).unwrap();
            if !f.is_zero() {
                break f;
            }
        };
        let r = compute_kmin(&[f.clone()], 9).unwrap();
        assert!(r.k <= d + 1);
        assert!(squarefree_test(&r.witness).unwrap());
        // the witness annihilates the form (or exceeds its degree)
        if r.k <= d {
            assert!(apolar_apply(&r.witness, &f).unwrap().is_zero());
        }
    }
}

#[test]
fn decompose_round_trip_on_constructed_systems() {
    // systems built from known rational points stay on the exact path
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    for _ in 0..20 {
        let d = rng.gen_range(4..=9);
        let k = rng.gen_range(2..=4.min(d));
        let points: Vec<LinearForm> = (0..k)
            .map(|i| LinearForm::from_integers(1, i as i64 - 1).unwrap())
            .collect();
        let forms: Vec<BinaryForm> = (0..2)
            .map(|_| {
                let terms: Vec<(LinearForm, BigRational)> = points
                    .iter()
                    .map(|l| (l.clone(), rat(rng.gen_range(1..=9))))
                    .collect();
                expand_power_sum(d, &terms).unwrap()
            })
            .collect();
        let Ok(out) = decompose(&forms, k, 13, ROOT_TOL, RECONSTRUCTION_TOL) else {
            continue; // dependent sample; skip
        };
        if let DecomposeOutcome::Found(dec) = out {
            assert!(dec.is_exact());
            assert_eq!(dec.reconstruction_residual, 0.0);
            let report = verify_decomposition(&forms, &dec, RECONSTRUCTION_TOL).unwrap();
            assert!(report.pass);
        } else {
            panic!("constructed system must decompose at its construction size");
        }
    }
}

#[test]
fn exactness_dichotomy() {
    // all-rational witness: every root exact, residual identically zero
    let w = DualForm::from_integers(3, &[0, 1, 0, -1]).unwrap(); // y1*(y0-y1)*(y0+y1)
    let roots = binary_form_roots(&w, ROOT_TOL).unwrap();
    assert!(roots.all_exact());
    assert_eq!(roots.residual(), 0.0);

    // irrational witness: numeric points force numeric coefficients
    let quartic = DualForm::from_integers(4, &[1, 0, 0, 0, 1]).unwrap();
    let roots = binary_form_roots(&quartic, ROOT_TOL).unwrap();
    assert!(!roots.all_exact());
    assert!(roots.residual() < ROOT_TOL);
    // x0^3*x1 - x0*x1^3 lies in the inverse system of the witness
    let g = BinaryForm::from_integers(4, &[0, 1, 0, -1, 0]).unwrap();
    let (c, res) = solve_coefficients(&[g], &roots).unwrap();
    assert!(!c.is_exact());
    assert!(res < RECONSTRUCTION_TOL);
}

#[test]
fn root_set_rejects_duplicates() {
    let p = apolar_core::ProjectivePoint::exact_from_integers(1, 1).unwrap();
    let q = apolar_core::ProjectivePoint::exact_from_integers(2, 2).unwrap();
    assert!(RootSet::new(vec![p, q], 0.0, ROOT_TOL).is_err());
}

#[test]
fn solve_coefficients_matches_construction() {
    // f = 4*(x0)^6 - 3*(x1)^6 + 2*(x0+x1)^6 recovered from its own points
    let ls = [
        LinearForm::from_integers(1, 0).unwrap(),
        LinearForm::from_integers(0, 1).unwrap(),
        LinearForm::from_integers(1, 1).unwrap(),
    ];
    let cs = [rat(4), rat(-3), rat(2)];
    let f = expand_power_sum(
        6,
        &ls.iter().cloned().zip(cs.iter().cloned()).collect::<Vec<_>>(),
    )
    .unwrap();
    let points: Vec<_> = ls
        .iter()
        .map(|l| {
            apolar_core::ProjectivePoint::exact(
                BigRational::from_integer(l.a().clone()),
                BigRational::from_integer(l.b().clone()),
            )
            .unwrap()
        })
        .collect();
    let roots = RootSet::new(points, 0.0, ROOT_TOL).unwrap();
    let (c, res) = solve_coefficients(&[f], &roots).unwrap();
    assert_eq!(res, 0.0);
    let Coefficients::Exact(rows) = c else { panic!("exact path expected") };
    assert_eq!(rows[0], vec![rat(4), rat(-3), rat(2)]);
}
