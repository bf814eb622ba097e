//! The spectrum calculator: consumes a spectral-input document (or a
//! preset) and emits the Dirac spectrum report with μ₂(D²) provenance.

use g2dirac_core::spectral::{dirac_spectrum_n7, mu1_d2, presets, SpectralInput};
use serde_json::{json, Value};

use crate::exact_json::{bounds_json, rational_json, spectrum_report_json};
use crate::report::RunReport;

pub struct PredictOutcome {
    pub report: RunReport,
    pub payload: Option<Value>,
}

pub enum PredictSource {
    Config(Box<SpectralInput>),
    PresetSasaki5,
    PresetTorus,
}

pub fn run(source: PredictSource) -> PredictOutcome {
    match source {
        PredictSource::PresetSasaki5 => sasaki5(),
        PredictSource::PresetTorus => spectrum(presets::torus_input(), "torus"),
        PredictSource::Config(input) => spectrum(*input, "config"),
    }
}

fn sasaki5() -> PredictOutcome {
    let mut report = RunReport::new("predict");
    let (n, a, lambda0_1, bounds, notes) = presets::sasaki5_bounds();
    report.check("preset_sasaki5_loaded", true);
    report.check(
        "mu1_D2_is_25_4",
        mu1_d2(n, &a) == g2dirac_core::exact::rat(25, 4),
    );
    let payload = json!({
        "preset": "sasaki5",
        "n": n,
        "a": rational_json(&a),
        "lambda0_1": rational_json(&lambda0_1),
        "mu1_D2": rational_json(&mu1_d2(n, &a)),
        "bounds": bounds_json(&bounds),
        "notes": notes,
    });
    PredictOutcome {
        report,
        payload: Some(payload),
    }
}

fn spectrum(input: SpectralInput, origin: &str) -> PredictOutcome {
    let mut report = RunReport::new("predict");
    match input.validate() {
        Ok(()) => report.check("input_validates", true),
        Err(e) => {
            report.check_with_witness("input_validates", false, || format!("{e}"));
            return PredictOutcome {
                report,
                payload: None,
            };
        }
    }
    match dirac_spectrum_n7(&input) {
        Ok(spectrum) => {
            report.check("spectrum_assembled", true);
            if spectrum.mu2_d2.is_some() {
                report.check("mu2_for_class", true);
            } else {
                report.check_skipped("mu2_for_class", "class formula inputs missing; bounds only");
            }
            let payload = json!({
                "origin": origin,
                "n": input.n,
                "a": rational_json(&input.a),
                "class": input.class.name(),
                "killing_spinors": input.class.killing_spinor_count(),
                "scalar_curvature": rational_json(&input.scalar_curvature()),
                "report": spectrum_report_json(&spectrum),
            });
            PredictOutcome {
                report,
                payload: Some(payload),
            }
        }
        Err(e) => {
            report.check_with_witness("spectrum_assembled", false, || format!("{e}"));
            PredictOutcome {
                report,
                payload: None,
            }
        }
    }
}
