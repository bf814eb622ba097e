//! JSON forms for exact values: rationals travel as "p/q" strings (never
//! floats) and radical values as {p, s, q} objects.

use g2dirac_core::exact::{parse_rational, rational_string, Rational};
use g2dirac_core::spectral::{
    ExactEigenvalue, GeometryClass, Mu2Result, NamedBound, SpectralInput, SpectrumReport,
};
use serde_json::{json, Value};

pub fn rational_json(r: &Rational) -> Value {
    Value::String(rational_string(r))
}

pub fn eigenvalue_json(v: &ExactEigenvalue) -> Value {
    json!({
        "p": rational_string(v.p()),
        "s": v.s(),
        "q": rational_string(v.q()),
        "display": format!("{v}"),
    })
}

pub fn bounds_json(bounds: &[NamedBound]) -> Value {
    Value::Array(
        bounds
            .iter()
            .map(|b| {
                json!({
                    "name": b.name,
                    "kind": b.kind.name(),
                    "value": eigenvalue_json(&b.value),
                })
            })
            .collect(),
    )
}

pub fn mu2_json(mu2: &Mu2Result) -> Value {
    json!({
        "value": eigenvalue_json(&mu2.value),
        "kind": mu2.kind.name(),
        "provenance": mu2.provenance,
        "side_conditions": mu2
            .side_conditions
            .iter()
            .map(|c| json!({"name": c.name, "satisfied": c.satisfied}))
            .collect::<Vec<_>>(),
    })
}

pub fn spectrum_report_json(report: &SpectrumReport) -> Value {
    json!({
        "dirac_values": report
            .dirac_values
            .iter()
            .map(|(v, tag)| json!({
                "value": eigenvalue_json(v),
                "source": format!("{tag}"),
            }))
            .collect::<Vec<_>>(),
        "mu1_D2": rational_json(&report.mu1_d2),
        "mu2_D2": report.mu2_d2.as_ref().map(mu2_json),
        "bounds": bounds_json(&report.bounds),
        "completeness_horizon": report.completeness_horizon.as_ref().map(eigenvalue_json),
        "notes": report.notes,
    })
}

/// Configuration parse error with the offending JSON path.
#[derive(Debug)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn field<'v>(root: &'v Value, key: &str) -> Option<&'v Value> {
    root.as_object().and_then(|o| o.get(key))
}

fn parse_rational_field(v: &Value, path: &str) -> Result<Rational, ConfigError> {
    let s = v.as_str().ok_or_else(|| ConfigError {
        path: path.into(),
        message: format!("expected a rational string \"p/q\", got {v}"),
    })?;
    parse_rational(s).map_err(|_| ConfigError {
        path: path.into(),
        message: format!("expected a rational string \"p/q\", got {s:?} (decimals are rejected)"),
    })
}

fn parse_rational_list(root: &Value, key: &str) -> Result<Vec<Rational>, ConfigError> {
    match field(root, key) {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_rational_field(v, &format!("{key}[{i}]")))
            .collect(),
        Some(other) => Err(ConfigError {
            path: key.into(),
            message: format!("expected an array of rational strings, got {other}"),
        }),
    }
}

/// Parses the spectrum-calculator configuration document:
/// keys n, a ("p/q"), class, lambda0[], lambda1_plus[], lambda1_minus[],
/// Lambda1.
pub fn parse_spectral_input(doc: &str) -> Result<SpectralInput, ConfigError> {
    let root: Value = serde_json::from_str(doc).map_err(|e| ConfigError {
        path: "<document>".into(),
        message: format!("invalid JSON: {e}"),
    })?;
    let n = field(&root, "n")
        .and_then(Value::as_u64)
        .ok_or_else(|| ConfigError {
            path: "n".into(),
            message: "expected an integer".into(),
        })? as u32;
    let a = parse_rational_field(
        field(&root, "a").ok_or_else(|| ConfigError {
            path: "a".into(),
            message: "missing field".into(),
        })?,
        "a",
    )?;
    let class_name = field(&root, "class")
        .and_then(Value::as_str)
        .ok_or_else(|| ConfigError {
            path: "class".into(),
            message: "expected a geometry class string".into(),
        })?;
    let class = GeometryClass::parse(class_name).ok_or_else(|| ConfigError {
        path: "class".into(),
        message: format!(
            "unknown class {:?}; valid: {}",
            class_name,
            GeometryClass::ALL.map(|c| c.name()).join(", ")
        ),
    })?;
    let big_lambda1 = match field(&root, "Lambda1") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_rational_field(v, "Lambda1")?),
    };
    Ok(SpectralInput {
        n,
        a,
        class,
        lambda0: parse_rational_list(&root, "lambda0")?,
        lambda1_plus: parse_rational_list(&root, "lambda1_plus")?,
        lambda1_minus: parse_rational_list(&root, "lambda1_minus")?,
        big_lambda1,
    })
}
