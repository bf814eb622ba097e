//! The algebraic verification suite: Clifford relation table, contraction
//! identities, Hodge involution, the rank/kernel check of the spinor action map and the
//! skew-adjointness of the cross operator.

use g2dirac_core::clifford::{relation_table_failure, Cl7, SpinEndomorphism};
use g2dirac_core::exact::{rat, Scalar};
use g2dirac_core::exterior::Multivector;
use g2dirac_core::g2::{coefficient_table, G2Structure};
use g2dirac_core::linalg::{self, ScalarField};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use crate::report::RunReport;

pub fn random_rational(rng: &mut SmallRng) -> Scalar {
    Scalar::from_rational(rat(rng.random_range(-30..=30), rng.random_range(1..=10)))
}

pub fn random_homogeneous(rng: &mut SmallRng, grade: u8) -> Multivector {
    let mut out = Multivector::zero(7);
    for mask in 0u8..128 {
        if mask.count_ones() != grade as u32 {
            continue;
        }
        let indices: Vec<u8> = (0..7)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let basis = Multivector::basis_form(7, &indices).expect("valid indices");
        out = &out + &basis.scale(&random_rational(rng));
    }
    out
}

pub fn run(seed: u64) -> RunReport {
    let mut report = RunReport::new("verify-algebra");
    let mut rng = SmallRng::seed_from_u64(seed);
    let cl = Cl7::new();

    // 49-pair relation table on the shipped generators
    let witness = relation_table_failure(cl.gammas());
    report.check_with_witness(
        "clifford_relation_table_49_pairs",
        witness.is_none(),
        || format!("pair {witness:?}"),
    );
    report.check(
        "gamma_skew_symmetry",
        cl.gammas().iter().all(SpinEndomorphism::is_skew_symmetric),
    );

    // frame contraction identities, basis and random instances
    let mut grade1_ok = true;
    for i in 1..=7u8 {
        let e_i = Multivector::basis_vector(7, i).expect("valid");
        grade1_ok &= cl.frame_contraction_factor(&e_i) == Ok(Scalar::from_int(5));
    }
    for _ in 0..20 {
        let x = random_homogeneous(&mut rng, 1);
        if !x.is_zero() {
            grade1_ok &= cl.frame_contraction_factor(&x) == Ok(Scalar::from_int(5));
        }
    }
    report.check("contraction_identity_grade1_factor_5", grade1_ok);
    let mut grade2_ok = true;
    for mask in 0u8..128 {
        if mask.count_ones() != 2 {
            continue;
        }
        let indices: Vec<u8> = (0..7)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let s = Multivector::basis_form(7, &indices).expect("valid");
        grade2_ok &= cl.frame_contraction_factor(&s) == Ok(Scalar::from_int(-3));
    }
    for _ in 0..20 {
        let s = random_homogeneous(&mut rng, 2);
        if !s.is_zero() {
            grade2_ok &= cl.frame_contraction_factor(&s) == Ok(Scalar::from_int(-3));
        }
    }
    report.check("contraction_identity_grade2_factor_minus_3", grade2_ok);

    // Hodge involution on all 128 basis forms
    let hodge_ok = (0u8..128).all(|mask| {
        let indices: Vec<u8> = (0..7)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let u = Multivector::basis_form(7, &indices).expect("valid");
        u.hodge().hodge() == u
    });
    report.check("hodge_involution_dimension_7", hodge_ok);

    match G2Structure::build_standard(&cl) {
        Err(e) => report.check_with_witness("g2_structure_build", false, || format!("{e}")),
        Ok(g2) => {
            report.check("g2_structure_build", true);
            let rho = g2.rho_omega3();
            report.check(
                "rho_omega3_eigenvalue_minus7_multiplicity_1",
                rho.eigenspace(&Scalar::from_int(-7)).len() == 1,
            );
            report.check(
                "rho_omega3_eigenvalue_plus1_multiplicity_7",
                rho.eigenspace(&Scalar::from_int(1)).len() == 7,
            );
            report.check("psi_unit_norm", g2.psi().norm_sq() == Scalar::one());

            match g2.verify_action_kernel(&cl) {
                Err(e) => report.check_with_witness("verify_action_kernel", false, || format!("{e}")),
                Ok(kernel_report) => {
                    report.check("action_kernel_rank_8", kernel_report.rank == 8);
                    report.check("action_kernel_dim_21", kernel_report.kernel_dim == 21);
                    report.check_with_witness(
                        "action_kernel_predicted_vectors_annihilate",
                        kernel_report.predicted_kernel_verified,
                        || format!("{:?}", kernel_report.witness),
                    );
                }
            }

            let mut random_ok = true;
            for _ in 0..100 {
                let sigma = random_homogeneous(&mut rng, 2);
                random_ok &= g2.transfer_annihilates_psi(&cl, &sigma).unwrap_or(false);
            }
            report.check("transfer_random_instances_100", random_ok);

            let mut skew_ok = true;
            for _ in 0..10 {
                let x = random_homogeneous(&mut rng, 1);
                if let Ok(lam) = g2.cross_operator(&x) {
                    for i in 0..7 {
                        for j in 0..7 {
                            skew_ok &= (lam.at(i, j) + lam.at(j, i)).is_zero();
                        }
                    }
                    // Λ_x² = x xᵀ − |x|² Id
                    let sq = linalg::mat_mul(&ScalarField, &lam, &lam);
                    let comps: Vec<Scalar> = (1..=7u8).map(|i| x.coeff_on(&[i])).collect();
                    let norm = x.norm_sq();
                    for i in 0..7 {
                        for j in 0..7 {
                            let mut expected = &comps[i] * &comps[j];
                            if i == j {
                                expected = &expected - &norm;
                            }
                            skew_ok &= sq.at(i, j) == &expected;
                        }
                    }
                }
            }
            report.check("cross_operator_skew_and_square_identity", skew_ok);

            let omega_rows = coefficient_table(g2.omega3())
                .into_iter()
                .map(|(label, c)| vec![label, format!("{c}")])
                .collect();
            report.table(
                "omega3_coefficients",
                &["basis_form", "coefficient"],
                omega_rows,
            );
        }
    }
    report
}
