//! Generic eigenvalue bounds for arbitrary dimension: μ₁, the function
//! upper bound, the two analytic floors and the coclosed-form bounds.

use g2dirac_core::exact::Rational;
use g2dirac_core::spectral::{
    floors, form_bound_c_chain, killing_form_eigenvalue, killing_form_eigenvalue_squared, mu1_d2,
    function_upper_bound, form_spinor_lower_bound,
};
use serde_json::{json, Value};

use crate::exact_json::{eigenvalue_json, rational_json};
use crate::report::RunReport;

pub struct BoundsOutcome {
    pub report: RunReport,
    pub payload: Option<Value>,
}

pub fn run(
    n: u32,
    a: &Rational,
    lambda0_1: Option<&Rational>,
    big_lambda1: Option<&Rational>,
) -> BoundsOutcome {
    let mut report = RunReport::new("bounds");
    let fl = floors(n, a);
    let mut entries = vec![
        ("mu1_D2", json!(rational_json(&mu1_d2(n, a)))),
        (
            "killing_form_eigenvalue",
            json!(rational_json(&killing_form_eigenvalue(n, a))),
        ),
        (
            "killing_form_eigenvalue_squared",
            json!(rational_json(&killing_form_eigenvalue_squared(n, a))),
        ),
        ("gallot_meyer_floor", json!(rational_json(&fl.gallot_meyer))),
        (
            "lichnerowicz_obata_floor",
            json!(rational_json(&fl.lichnerowicz_obata)),
        ),
    ];
    report.check("floors_computed", true);

    if let Some(l0) = lambda0_1 {
        match function_upper_bound(n, a, l0) {
            Ok(bound) => {
                entries.push(("mu2_D2_function_upper", eigenvalue_json(&bound)));
                report.check("function_upper_bound_computed", true);
            }
            Err(e) => {
                report.check_with_witness("function_upper_bound_computed", false, || format!("{e}"))
            }
        }
    }
    if let Some(l1) = big_lambda1 {
        match form_spinor_lower_bound(n, a, l1) {
            Ok(bound) => {
                entries.push(("form_abs_m_lower", eigenvalue_json(&bound)));
                let chain = form_bound_c_chain(n, a, l1).expect("floor already validated");
                entries.push(("form_abs_c_lower", eigenvalue_json(&chain)));
                report.check("form_lower_bound_computed", true);
            }
            Err(e) => {
                report.check_with_witness("form_lower_bound_computed", false, || format!("{e}"))
            }
        }
    }

    let payload = json!({
        "n": n,
        "a": rational_json(a),
        "lambda0_1": lambda0_1.map(rational_json),
        "Lambda1": big_lambda1.map(rational_json),
        "bounds": Value::Object(
            entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        ),
    });
    BoundsOutcome {
        report,
        payload: Some(payload),
    }
}
