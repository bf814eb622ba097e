//! Property suites crossing the algebra modules: random exact inputs, no
//! tolerances anywhere.

use proptest::prelude::*;

use g2dirac_core::clifford::{Cl7, SpinEndomorphism, Spinor};
use g2dirac_core::exact::{rat, rat_int, Rational, Scalar};
use g2dirac_core::exterior::{contract, Multivector};
use g2dirac_core::g2::G2Structure;
use g2dirac_core::linalg::{self, ScalarField};
use g2dirac_core::spectral::{dirac_from_function, function_eigenvalue_relation, ExactEigenvalue};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    rational().prop_map(Scalar::from_rational)
}

/// Random homogeneous k-form in dimension 7 with rational coefficients.
fn homogeneous(grade: u8) -> impl Strategy<Value = Multivector> {
    let masks: Vec<u8> = (0u8..128)
        .filter(|m| m.count_ones() == grade as u32)
        .collect();
    proptest::collection::vec(scalar(), masks.len()).prop_map(move |coeffs| {
        let mut out = Multivector::zero(7);
        for (mask, c) in masks.iter().zip(coeffs) {
            let indices: Vec<u8> = (0..7)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| b + 1)
                .collect();
            out = &out + &Multivector::basis_form(7, &indices).unwrap().scale(&c);
        }
        out
    })
}

fn one_form() -> impl Strategy<Value = Multivector> {
    homogeneous(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_graded_anticommutativity(
        gu in 0u8..=3, gv in 0u8..=3,
        seed_u in proptest::collection::vec(scalar(), 35),
        seed_v in proptest::collection::vec(scalar(), 35),
    ) {
        let build = |grade: u8, coeffs: &[Scalar]| {
            let masks: Vec<u8> = (0u8..128).filter(|m| m.count_ones() == grade as u32).collect();
            let mut out = Multivector::zero(7);
            for (i, mask) in masks.iter().enumerate() {
                let indices: Vec<u8> =
                    (0..7).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                out = &out + &Multivector::basis_form(7, &indices).unwrap()
                    .scale(&coeffs[i % coeffs.len()]);
            }
            out
        };
        let u = build(gu, &seed_u);
        let v = build(gv, &seed_v);
        let uv = u.wedge(&v).unwrap();
        let vu = v.wedge(&u).unwrap();
        let sign = if (gu as u32 * gv as u32) % 2 == 0 { 1 } else { -1 };
        let expected = if sign > 0 { vu } else { -&vu };
        prop_assert_eq!(uv, expected);
    }

    #[test]
    fn hodge_is_involutive(grade in 0u8..=7, v in homogeneous(2)) {
        // on the random 2-form and on a random-grade basis slice
        prop_assert_eq!(v.hodge().hodge(), v);
        let mask: u8 = (0..grade).fold(0, |m, b| m | (1 << b));
        let indices: Vec<u8> = (0..7).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        let u = Multivector::basis_form(7, &indices).unwrap();
        prop_assert_eq!(u.hodge().hodge(), u);
    }

    #[test]
    fn inner_product_matches_wedge_with_dual(u in homogeneous(3), v in homogeneous(3)) {
        // ⟨u, v⟩·vol = u ∧ *v
        let vol = Multivector::volume(7);
        let lhs = vol.scale(&u.inner(&v).unwrap());
        let rhs = u.wedge(&v.hodge()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_is_adjoint_to_wedge(x in one_form(), u in homogeneous(2), v in homogeneous(3)) {
        // ⟨x ⌟ v, u⟩ = ⟨v, x ∧ u⟩
        let lhs = contract(&x, &v).unwrap().inner(&u).unwrap();
        let rhs = v.inner(&x.wedge(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn clifford_square_of_one_form(x in one_form()) {
        // ρ(x)² = −|x|²·Id
        let cl = Cl7::new();
        let rho = cl.action(&x).unwrap();
        let expected = SpinEndomorphism::scalar(-&x.norm_sq());
        prop_assert_eq!(rho.compose(&rho), expected);
    }

    #[test]
    fn one_form_action_is_skew_and_orthogonal_to_psi(x in one_form(), comps in proptest::collection::vec(rational(), 8)) {
        let cl = Cl7::new();
        let rho = cl.action(&x).unwrap();
        // skew-symmetry of ρ(x) forces ⟨x·ψ, ψ⟩ = 0 for every spinor ψ
        prop_assert!(rho.matrix().transpose() == rho.scale(&Scalar::from_int(-1)).matrix().clone());
        let psi = Spinor::from_slice(
            &comps.iter().map(|r| Scalar::from_rational(r.clone())).collect::<Vec<_>>(),
        );
        prop_assert!(rho.apply(&psi).inner(&psi).is_zero());
    }

    #[test]
    fn contraction_factor_on_random_forms(x in one_form(), s in homogeneous(2)) {
        let cl = Cl7::new();
        if !x.is_zero() {
            prop_assert_eq!(cl.frame_contraction_factor(&x).unwrap(), Scalar::from_int(5));
        }
        if !s.is_zero() {
            prop_assert_eq!(cl.frame_contraction_factor(&s).unwrap(), Scalar::from_int(-3));
        }
    }

    #[test]
    fn transfer_annihilates_on_random_two_forms(s in homogeneous(2)) {
        let cl = Cl7::new();
        let g2 = G2Structure::build_standard(&cl).unwrap();
        prop_assert!(g2.transfer_annihilates_psi(&cl, &s).unwrap());
    }

    #[test]
    fn transfer_is_linear(s in homogeneous(2), t in homogeneous(2), c in rational()) {
        let cl = Cl7::new();
        let g2 = G2Structure::build_standard(&cl).unwrap();
        let lhs = g2.transfer(&(&s.scale(&Scalar::from_rational(c.clone())) + &t)).unwrap();
        let rhs = &g2.transfer(&s).unwrap().scale(&Scalar::from_rational(c)) + &g2.transfer(&t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_operator_skew_adjoint(
        xc in proptest::collection::vec(rational(), 7),
        uc in proptest::collection::vec(rational(), 7),
        vc in proptest::collection::vec(rational(), 7),
    ) {
        let cl = Cl7::new();
        let g2 = G2Structure::build_standard(&cl).unwrap();
        let to_form = |c: &[Rational]| {
            Multivector::one_form(
                7,
                &c.iter().map(|r| Scalar::from_rational(r.clone())).collect::<Vec<_>>(),
            )
        };
        let x = to_form(&xc);
        let u = to_form(&uc);
        let v = to_form(&vc);
        let lam = g2.cross_operator(&x).unwrap();
        let f = ScalarField;
        let apply_form = |m: &linalg::Matrix<Scalar>, w: &Multivector| {
            let comps: Vec<Scalar> = (1..=7u8).map(|i| w.coeff_on(&[i])).collect();
            Multivector::one_form(7, &linalg::apply(&f, m, &comps))
        };
        // ⟨Λ_x(u), v⟩ = −⟨u, Λ_x(v)⟩
        let lhs = apply_form(&lam, &u).inner(&v).unwrap();
        let rhs = u.inner(&apply_form(&lam, &v)).unwrap();
        prop_assert!((&lhs + &rhs).is_zero());
        // trace Λ_x = 0
        let mut tr = Scalar::zero();
        for i in 0..7 {
            tr = &tr + lam.at(i, i);
        }
        prop_assert!(tr.is_zero());
    }

    #[test]
    fn dirac_function_round_trip(n in 3u32..=9, a in rational(), lam in (1i64..400, 1i64..8).prop_map(|(p, q)| rat(p, q))) {
        // both roots of the function family reproduce λ⁰ exactly
        let (m_plus, m_minus) = dirac_from_function(n, &a, &lam).unwrap();
        prop_assert_eq!(function_eigenvalue_relation(n, &a, &m_plus).unwrap(), lam.clone());
        prop_assert_eq!(function_eigenvalue_relation(n, &a, &m_minus).unwrap(), lam);
    }

    #[test]
    fn form_family_substitution(a in rational(), lam in (1i64..400, 1i64..8).prop_map(|(p, q)| rat(p, q))) {
        // m = a ± √(16a² + λ¹) satisfies (3a + m)(m − 5a) = λ¹
        let root = ExactEigenvalue::sqrt(rat_int(16) * &a * &a + &lam).unwrap();
        for m in [root.add_rational(&a), root.neg().add_rational(&a)] {
            let left = m.add_rational(&(rat_int(3) * &a));
            let right = m.add_rational(&(rat_int(-5) * &a));
            // (3a + m)(m − 5a) = m² − 2am − 15a²
            let product = left
                .square()
                .try_add(&right.square())?
                .try_sub(&left.try_sub(&right).unwrap().square())?
                .mul_rational(&rat(1, 2));
            prop_assert_eq!(product.as_rational(), Some(&lam));
        }
    }

    #[test]
    fn exact_order_matches_decimal_oracle(
        p1 in rational(), q1 in (0i64..200, 1i64..6).prop_map(|(p, q)| rat(p, q)), s1 in -1i8..=1,
        p2 in rational(), q2 in (0i64..200, 1i64..6).prop_map(|(p, q)| rat(p, q)), s2 in -1i8..=1,
    ) {
        let x = build_ev(p1, s1, q1);
        let y = build_ev(p2, s2, q2);
        let exact = x.cmp_exact(&y);
        let gap = x.scaled_floor(40) - y.scaled_floor(40);
        // the scaled floors carry ±2 error each; outside that band they
        // must agree with the exact order
        if gap > 4.into() {
            prop_assert_eq!(exact, std::cmp::Ordering::Greater);
        } else if gap < (-4).into() {
            prop_assert_eq!(exact, std::cmp::Ordering::Less);
        } else {
            prop_assert_eq!(x.cmp_exact(&y) == std::cmp::Ordering::Equal,
                x.scaled_floor(80) - y.scaled_floor(80) <= 4.into()
                    && y.scaled_floor(80) - x.scaled_floor(80) <= 4.into());
        }
    }
}

fn build_ev(p: Rational, s: i8, q: Rational) -> ExactEigenvalue {
    let base = ExactEigenvalue::sqrt(q).unwrap();
    let signed = match s {
        1 => base,
        -1 => base.neg(),
        _ => ExactEigenvalue::zero(),
    };
    signed.add_rational(&p)
}

#[test]
fn trace_of_every_basis_action_vanishes() {
    // traceless for 1 ≤ |I| ≤ 6; the volume element is the one exception,
    // acting as a scalar on the 8-dimensional representation
    let cl = Cl7::new();
    let id = SpinEndomorphism::identity();
    for mask in 1u8..128 {
        let indices: Vec<u8> = (0..7)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let form = Multivector::basis_form(7, &indices).unwrap();
        let rho = cl.action(&form).unwrap();
        if indices.len() < 7 {
            assert!(rho.trace().is_zero(), "trace of rho(e_{indices:?})");
        } else {
            assert!(rho == id || rho == id.scale(&Scalar::from_int(-1)));
        }
        // ρ(e_I) is orthogonal: ρᵀρ = Id
        let gram = rho.transpose().compose(&rho);
        assert!(gram == id);
    }
}

#[test]
fn no_false_homomorphism() {
    // ρ(u∧v) ≠ ρ(u)ρ(v) in general: e₁∧e₁ = 0 but ρ(e₁)ρ(e₁) = −Id
    let cl = Cl7::new();
    let e1 = Multivector::basis_vector(7, 1).unwrap();
    let wedge = e1.wedge(&e1).unwrap();
    assert!(cl.action(&wedge).unwrap().is_zero());
    let composed = cl.action(&e1).unwrap().compose(&cl.action(&e1).unwrap());
    assert!(!composed.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mu2_is_monotone_in_each_slot(
        base in (1i64..=40, 1i64..=4).prop_map(|(p, q)| rat(p, q)),
        bump0 in 0i64..=30, bump_p in 0i64..=30, bump_m in 0i64..=30,
        class_pick in 0usize..=4,
    ) {
        use g2dirac_core::spectral::{mu2_n7, GeometryClass, SpectralInput};
        // valid inputs above every floor for the chosen class
        let (class, a) = [
            (GeometryClass::Parallel, rat_int(0)),
            (GeometryClass::ProperNearlyParallel, rat_int(1)),
            (GeometryClass::ProperWithKillingField, rat_int(1)),
            (GeometryClass::SasakiEinstein, rat(1, 2)),
            (GeometryClass::SasakiEinsteinIsomGe2, rat(1, 2)),
        ][class_pick].clone();
        let mk = |l0: Rational, lp: Rational, lm: Rational| -> SpectralInput {
            let mut input = SpectralInput::new(7, a.clone(), class);
            match class {
                GeometryClass::Parallel => {
                    input.lambda0 = vec![l0];
                    input.lambda1_plus = vec![lp];
                    input.lambda1_minus = vec![lm];
                }
                GeometryClass::ProperNearlyParallel => {
                    input.lambda0 = vec![rat_int(28) + l0];
                    input.lambda1_plus = vec![rat_int(48) + lp];
                    input.lambda1_minus = vec![rat_int(48) + lm];
                }
                GeometryClass::ProperWithKillingField => {
                    input.lambda0 = vec![rat_int(28) + l0];
                    input.lambda1_plus = vec![rat_int(48) + lp];
                    input.lambda1_minus = vec![rat_int(48)];
                    let _ = lm;
                }
                GeometryClass::SasakiEinstein => {
                    input.lambda0 = vec![rat_int(7) + l0];
                    input.lambda1_plus = vec![rat_int(12), rat_int(12) + lp];
                    input.lambda1_minus = vec![rat_int(12) + lm];
                }
                _ => {
                    input.lambda0 = vec![rat_int(7) + l0];
                    input.lambda1_plus = vec![rat_int(12), rat_int(12) + lp];
                    input.lambda1_minus = vec![rat_int(12)];
                    let _ = lm;
                }
            }
            input
        };
        let eps = rat(1, 7);
        let base_input = mk(base.clone() + &eps, base.clone() + &eps, base.clone() + &eps);
        let mu2_base = mu2_n7(&base_input).unwrap();
        // bump one slot at a time: μ₂ must not decrease
        let bumped = [
            mk(base.clone() + &eps + rat_int(bump0), base.clone() + &eps, base.clone() + &eps),
            mk(base.clone() + &eps, base.clone() + &eps + rat_int(bump_p), base.clone() + &eps),
            mk(base.clone() + &eps, base.clone() + &eps, base.clone() + &eps + rat_int(bump_m)),
        ];
        for input in bumped {
            let mu2 = mu2_n7(&input).unwrap();
            prop_assert!(mu2_base.value.cmp_exact(&mu2.value) != std::cmp::Ordering::Greater);
        }
        // μ₁ < μ₂ whenever the floors are strict
        use g2dirac_core::spectral::mu1_d2;
        let mu1 = ExactEigenvalue::from_rational(mu1_d2(7, &a));
        prop_assert!(mu1.cmp_exact(&mu2_base.value) == std::cmp::Ordering::Less);
    }
}

#[test]
fn torus_sweep_level_four() {
    use g2dirac_core::torus::ModeContext;
    let cl = Cl7::new();
    let g2 = G2Structure::build_standard(&cl).unwrap();
    let ctx = ModeContext::new(&cl, &g2).unwrap();
    let result = ctx.sweep(4);
    assert!(
        result.failures.is_empty(),
        "failures: {:?}",
        result.failures
    );
    assert!(result.summary.all_pass);
    assert_eq!(result.summary.mu2_d2, Some(ExactEigenvalue::from_int(1)));
}
