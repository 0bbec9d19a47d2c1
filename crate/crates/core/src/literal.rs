//! Text forms of complex numbers, lists and sweep axes, as accepted on the
//! command line.
//!
//! A complex literal is `RE`, `RE+IMi` or `RE-IMi` with decimal floats and no
//! whitespace. Lists separate literals with commas; the empty string is the
//! empty list.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn parse_error(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    let ok = !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
        && s.bytes().any(|b| b.is_ascii_digit());
    if !ok {
        return Err(parse_error(
            "complex literal",
            whole,
            format!("`{s}` is not a decimal number"),
        ));
    }
    let v: f64 = s.parse().map_err(|_| {
        parse_error(
            "complex literal",
            whole,
            format!("`{s}` is not a decimal number"),
        )
    })?;
    if !v.is_finite() {
        return Err(parse_error("complex literal", whole, "value is not finite"));
    }
    Ok(v)
}

/// Parses `RE`, `RE+IMi` or `RE-IMi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    if s.chars().any(char::is_whitespace) {
        return Err(parse_error(
            "complex literal",
            s,
            "whitespace is not allowed",
        ));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s, s)?, 0.0));
    };
    // The split sign is the last `+`/`-` that is neither leading nor part of
    // an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(|| parse_error("complex literal", s, "expected RE+IMi or RE-IMi"))?;
    let re = parse_real(&body[..split], s)?;
    let im = parse_real(&body[split + 1..], s)?;
    let sign = if bytes[split] == b'-' { -1.0 } else { 1.0 };
    Ok(Complex64::new(re, sign * im))
}

/// Comma-separated complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex).collect()
}

/// Comma-separated finite reals.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_real(t, s)).collect()
}

/// Which quantity a sweep axis varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisTarget {
    /// Upper parameter `a_j` (1-based).
    Upper(usize),
    /// Lower parameter `b_l` (1-based).
    Lower(usize),
    /// The degree `n`.
    Degree,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AxisValues {
    Complex(Vec<Complex64>),
    Degree(Vec<usize>),
}

impl AxisValues {
    pub fn len(&self) -> usize {
        match self {
            AxisValues::Complex(v) => v.len(),
            AxisValues::Degree(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridAxis {
    pub target: AxisTarget,
    pub values: AxisValues,
}

/// Parses `a3=1,2.5`, `b1=1.5-0.5i` or `n=4,8,16`. An empty value list is
/// allowed and yields an empty grid.
pub fn parse_grid_axis(s: &str) -> Result<GridAxis> {
    let (name, values) = s
        .split_once('=')
        .ok_or_else(|| parse_error("grid axis", s, "expected NAME=VALUES"))?;
    let index = |rest: &str| -> Result<usize> {
        match rest.parse::<usize>() {
            Ok(j) if j >= 1 && rest.bytes().all(|b| b.is_ascii_digit()) => Ok(j),
            _ => Err(parse_error(
                "grid axis",
                s,
                format!("bad parameter index `{rest}`"),
            )),
        }
    };
    let target = if name == "n" {
        AxisTarget::Degree
    } else if let Some(rest) = name.strip_prefix('a') {
        AxisTarget::Upper(index(rest)?)
    } else if let Some(rest) = name.strip_prefix('b') {
        AxisTarget::Lower(index(rest)?)
    } else {
        return Err(parse_error(
            "grid axis",
            s,
            format!("unknown axis `{name}`"),
        ));
    };
    let values = match target {
        AxisTarget::Degree => AxisValues::Degree(if values.is_empty() {
            Vec::new()
        } else {
            values
                .split(',')
                .map(|t| {
                    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(parse_error(
                            "grid axis",
                            s,
                            format!("`{t}` is not a degree"),
                        ));
                    }
                    t.parse::<usize>()
                        .map_err(|e| parse_error("grid axis", s, e.to_string()))
                })
                .collect::<Result<_>>()?
        }),
        _ => AxisValues::Complex(parse_complex_list(values)?),
    };
    Ok(GridAxis { target, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("1.5-0.25i").unwrap(), c(1.5, -0.25));
        assert_eq!(parse_complex("-1+2i").unwrap(), c(-1.0, 2.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1e2-1e-2i").unwrap(), c(-100.0, -0.01));
    }

    #[test]
    fn complex_rejections() {
        for bad in [
            "", "i", "2i", "1 + 2i", " 1", "1+i", "1+2j", "abc", "inf", "NaN", "1e999", "1++2i",
            "1+2ii", "0x10", "--1", "1,2",
        ] {
            assert!(parse_complex(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_complex_list("").unwrap(), vec![]);
        assert_eq!(
            parse_complex_list("1,2-1i").unwrap(),
            vec![c(1.0, 0.0), c(2.0, -1.0)]
        );
        assert!(parse_complex_list("1,,2").is_err());
        assert_eq!(parse_real_list("0.5,-1").unwrap(), vec![0.5, -1.0]);
        assert!(parse_real_list("0.5+1i").is_err());
    }

    #[test]
    fn grid_axes() {
        let ax = parse_grid_axis("b1=1,1.5,2").unwrap();
        assert_eq!(ax.target, AxisTarget::Lower(1));
        assert_eq!(ax.values.len(), 3);
        let ax = parse_grid_axis("n=2,10").unwrap();
        assert_eq!(ax.values, AxisValues::Degree(vec![2, 10]));
        assert!(parse_grid_axis("b1=").unwrap().values.is_empty());
        for bad in ["b0=1", "c1=2", "n=1.5", "a=1", "b1", "n=-1", "a+1=2"] {
            assert!(parse_grid_axis(bad).is_err(), "{bad:?}");
        }
    }
}
