//! The torus sweep command: per-mode spectra streamed as JSON or CSV with
//! the parallel-case summary.

use std::io::Write;

use g2dirac_core::clifford::Cl7;
use g2dirac_core::g2::G2Structure;
use g2dirac_core::spectral::ExactEigenvalue;
use g2dirac_core::torus::{ModeContext, ModeSpectrum, SweepResult};
use serde_json::{json, Value};

use crate::exact_json::eigenvalue_json;
use crate::report::RunReport;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub struct TorusOutcome {
    pub report: RunReport,
    pub payload: Option<Value>,
}

pub fn run(
    max_norm_sq: u64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> std::io::Result<TorusOutcome> {
    let mut report = RunReport::new("torus");
    let cl = Cl7::new();
    let g2 = match G2Structure::build_standard(&cl) {
        Ok(g2) => g2,
        Err(e) => {
            report.check_with_witness("g2_structure_build", false, || format!("{e}"));
            return Ok(TorusOutcome {
                report,
                payload: None,
            });
        }
    };
    let ctx = match ModeContext::new(&cl, &g2) {
        Ok(ctx) => ctx,
        Err(e) => {
            report.check_with_witness("mode_context_build", false, || format!("{e}"));
            return Ok(TorusOutcome {
                report,
                payload: None,
            });
        }
    };
    let result = ctx.sweep(max_norm_sq);

    report.check("kernel_dimension_8_as_1_plus_7", result.kernel.pass);
    report.check_with_witness(
        "all_modes_multiset_equality",
        result.failures.is_empty(),
        || format!("{:?}", result.failures.first()),
    );
    report.check(
        "mu2_equals_min_of_lambda_slots",
        result.summary.corollary_holds,
    );
    report.check_with_witness(
        "mu2_equals_1",
        result.summary.mu2_d2 == Some(ExactEigenvalue::from_int(1)),
        || format!("{:?}", result.summary.mu2_d2),
    );

    let payload = match format {
        OutputFormat::Csv => {
            write_csv(&result, out)?;
            None
        }
        OutputFormat::Json => Some(sweep_json(&result)),
    };
    Ok(TorusOutcome { report, payload })
}

fn eigen_display(v: &ExactEigenvalue) -> String {
    format!("{v}")
}

fn mode_rows(spec: &ModeSpectrum) -> Vec<(String, &'static str)> {
    let mut rows = Vec::new();
    for (family, source) in [
        (&spec.direct, "direct"),
        (&spec.predicted_functions, "functions"),
        (&spec.predicted_forms, "forms"),
    ] {
        for (value, mult) in family {
            rows.push((format!("{},{}", eigen_display(value), mult), source));
        }
    }
    rows
}

fn write_csv(result: &SweepResult, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "k1,k2,k3,k4,k5,k6,k7,norm_sq,eigenvalue,multiplicity,source"
    )?;
    for spec in &result.modes {
        let k = spec.mode.components();
        let prefix = format!(
            "{},{},{},{},{},{},{},{}",
            k[0],
            k[1],
            k[2],
            k[3],
            k[4],
            k[5],
            k[6],
            spec.mode.norm_sq()
        );
        for (value_mult, source) in mode_rows(spec) {
            writeln!(out, "{prefix},{value_mult},{source}")?;
        }
    }
    let s = &result.summary;
    writeln!(
        out,
        "# summary: modes={} mu1_D2={} mu2_D2={} lambda0_1={:?} lambda1_plus_1={:?} lambda1_minus_1={:?} verdict={}",
        s.modes_checked,
        s.mu1_d2,
        s.mu2_d2.as_ref().map(eigen_display).unwrap_or_else(|| "none".into()),
        s.lambda0_1,
        s.lambda1_plus_1,
        s.lambda1_minus_1,
        if s.all_pass { "pass" } else { "fail" }
    )?;
    Ok(())
}

fn sweep_json(result: &SweepResult) -> Value {
    let family_json = |family: &[(ExactEigenvalue, usize)]| -> Value {
        Value::Array(
            family
                .iter()
                .map(|(v, m)| json!({"eigenvalue": eigenvalue_json(v), "multiplicity": m}))
                .collect(),
        )
    };
    let modes: Vec<Value> = result
        .modes
        .iter()
        .map(|spec| {
            json!({
                "k": spec.mode.components().to_vec(),
                "norm_sq": spec.mode.norm_sq(),
                "direct": family_json(&spec.direct),
                "functions": family_json(&spec.predicted_functions),
                "forms": family_json(&spec.predicted_forms),
                "verdict": if spec.verify().is_ok() { "pass" } else { "fail" },
            })
        })
        .collect();
    let s = &result.summary;
    json!({
        "modes": modes,
        "kernel": {
            "dimension": result.kernel.dimension,
            "killing_line_dim": result.kernel.killing_line_dim,
            "constant_form_dim": result.kernel.constant_form_dim,
            "verdict": if result.kernel.pass { "pass" } else { "fail" },
        },
        "summary": {
            "modes_checked": s.modes_checked,
            "mu1_D2": eigenvalue_json(&s.mu1_d2),
            "mu2_D2": s.mu2_d2.as_ref().map(eigenvalue_json),
            "lambda0_1": s.lambda0_1,
            "lambda1_plus_1": s.lambda1_plus_1,
            "lambda1_minus_1": s.lambda1_minus_1,
            "corollary_mu2_eq_min": s.corollary_holds,
            "verdict": if s.all_pass { "pass" } else { "fail" },
        },
    })
}
