//! Document rendering. Every float is written with 17 significant digits in
//! `{:.16e}` form; non-finite values become JSON `null` or an empty CSV field.

use std::fs;
use std::io::Write;
use std::path::Path;

use hypersum::{Complex64, HypParams, Poly};
use serde_json::{Map, Value};

use crate::CliError;

pub fn num(x: f64) -> Value {
    let x = x + 0.0;
    if x.is_finite() {
        serde_json::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number")
    } else {
        Value::Null
    }
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex).collect())
}

pub fn poly(p: &Poly) -> Value {
    complex_list(p.coeffs())
}

pub fn params_json(params: &HypParams) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), params.p().into());
    m.insert("q".into(), params.q().into());
    m.insert("a".into(), complex_list(params.a()));
    m.insert("b".into(), complex_list(params.b()));
    Value::Object(m)
}

pub fn float_field(x: f64) -> String {
    let x = x + 0.0;
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// `RE+IMi` with both parts at full precision; parses back with
/// `hypersum::literal::parse_complex`.
pub fn complex_literal(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{sign}{:.16e}i", z.re, z.im.abs())
}

/// Parameter list as `;`-separated complex literals.
pub fn param_field(zs: &[Complex64]) -> String {
    zs.iter()
        .copied()
        .map(complex_literal)
        .collect::<Vec<_>>()
        .join(";")
}

/// Top-level JSON document.
pub fn document(
    command: &str,
    params: Option<&HypParams>,
    results: Map<String, Value>,
    diagnostics: Map<String, Value>,
) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), command.into());
    m.insert("params".into(), params.map_or(Value::Null, params_json));
    m.insert("results".into(), Value::Object(results));
    m.insert("diagnostics".into(), Value::Object(diagnostics));
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    Value::Object(m)
}

pub fn json_text(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(CliError::io)?;
    for row in rows {
        w.write_record(row).map_err(CliError::io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(CliError::io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::io)?;
            stdout.flush().map_err(CliError::io)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypersum::literal::parse_complex;

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(num(0.5).to_string(), "5.0000000000000000e-1");
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(float_field(1.0), "1.0000000000000000e0");
        assert_eq!(float_field(f64::INFINITY), "");
        assert_eq!(float_field(-0.0), "0.0000000000000000e0");
    }

    #[test]
    fn literals_round_trip() {
        for z in [
            Complex64::new(1.5, -0.25),
            Complex64::new(-3e-7, 2e20),
            Complex64::new(0.1, 0.0),
        ] {
            assert_eq!(parse_complex(&complex_literal(z)).unwrap(), z);
        }
    }

    #[test]
    fn header_only_csv() {
        assert_eq!(csv_text(&["a", "b"], &[]).unwrap(), "a,b\n");
    }
}
