//! The 3-Sasakian coframe checks: the three transfer relations with
//! factors (−2, +6, +6), the two expansions of *ω³, and the induced
//! λ¹ values at a = 1/2.

use g2dirac_core::clifford::Cl7;
use g2dirac_core::exact::{rat, rat_int, Scalar};
use g2dirac_core::g2::{coefficient_table, CoframeData, G2Structure};
use g2dirac_core::spectral::laplace_from_transfer_factor;

use crate::report::RunReport;

pub fn run() -> RunReport {
    let mut report = RunReport::new("verify-sasakian");
    let cl = Cl7::new();
    let g2 = match G2Structure::build_standard(&cl) {
        Ok(g2) => g2,
        Err(e) => {
            report.check_with_witness("g2_structure_build", false, || format!("{e}"));
            return report;
        }
    };
    report.check("g2_structure_build", true);
    let coframe = CoframeData::standard();

    let factors = [
        Scalar::from_int(-2),
        Scalar::from_int(6),
        Scalar::from_int(6),
    ];
    for (i, factor) in factors.iter().enumerate() {
        let name = format!("transfer_relation_eta{}_factor_{}", i + 1, factor);
        match g2.transfer(&coframe.d_eta[i]) {
            Ok(image) => {
                let expected = coframe.eta[i].scale(factor);
                report.check_with_witness(&name, image == expected, || {
                    format!("got {image}, expected {expected}")
                });
            }
            Err(e) => report.check_with_witness(&name, false, || format!("{e}")),
        }
    }

    // *ω³ computed by the Hodge star against the star-free expansion
    match coframe.star_omega3_from_squares() {
        Ok(squares) => {
            report.check_with_witness(
                "star_omega3_equals_minus_eighth_of_squares",
                g2.star_omega3() == &squares,
                || format!("hodge: {}, squares: {}", g2.star_omega3(), squares),
            );
        }
        Err(e) => {
            report.check_with_witness("star_omega3_equals_minus_eighth_of_squares", false, || {
                format!("{e}")
            })
        }
    }

    // ω³ expansion: exactly 7 nonzero coefficients, all ±1
    let omega_coeffs = coefficient_table(g2.omega3());
    let unit_coeffs = omega_coeffs.iter().all(|(_, c)| (c * c) == Scalar::one());
    report.check(
        "omega3_has_7_unit_coefficients",
        omega_coeffs.len() == 7 && unit_coeffs,
    );
    report.check(
        "omega3_norm_sq_7",
        g2.omega3().norm_sq() == Scalar::from_int(7),
    );
    report.check(
        "rho_omega3_psi_eq_minus7_psi",
        g2.rho_omega3().apply(g2.psi()) == g2.psi().scale(&Scalar::from_int(-7)),
    );

    // both transfer factors give λ¹ = 12 at a = 1/2 via c(c − 8a)
    let half = rat(1, 2);
    let lam_plus = laplace_from_transfer_factor(7, &half, &rat_int(6));
    let lam_minus = laplace_from_transfer_factor(7, &half, &rat_int(-2));
    report.check_with_witness("lambda1_from_c6_equals_12", lam_plus == rat_int(12), || {
        format!("got {lam_plus}")
    });
    report.check_with_witness(
        "lambda1_from_c_minus2_equals_12",
        lam_minus == rat_int(12),
        || format!("got {lam_minus}"),
    );

    let omega_rows = omega_coeffs
        .into_iter()
        .map(|(l, c)| vec![l, format!("{c}")])
        .collect();
    report.table(
        "omega3_coefficients",
        &["basis_form", "coefficient"],
        omega_rows,
    );
    let star_rows = coefficient_table(g2.star_omega3())
        .into_iter()
        .map(|(l, c)| vec![l, format!("{c}")])
        .collect();
    report.table(
        "star_omega3_coefficients",
        &["basis_form", "coefficient"],
        star_rows,
    );
    report
}
