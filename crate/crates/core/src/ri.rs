//! R_I-type recurrences `P_n = (z - c_n) P_{n-1} - λ_n (z - a_n) P_{n-2}` and
//! their T-fraction specialization reproducing the monic `G_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyp::{delta_k, HypParams};
use crate::poly::{Poly, ZERO};

/// Relative threshold below which `λ_{n+1}` or `P_n(a)` count as zero.
pub const VANISHING_TOL: f64 = 1e-12;

/// Recurrence data indexed from `n = 1`: `c()[0]` is `c_1`, and so on.
///
/// `shift` holds the R_I shifts (the bold `a_n` of the recurrence), which are
/// unrelated to hypergeometric upper parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RIRecurrence {
    c: Vec<Complex64>,
    lambda: Vec<Complex64>,
    shift: Vec<Complex64>,
}

impl RIRecurrence {
    pub fn new(c: Vec<Complex64>, lambda: Vec<Complex64>, shift: Vec<Complex64>) -> Result<Self> {
        if c.iter()
            .chain(&lambda)
            .chain(&shift)
            .any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite("R_I recurrence coefficients"));
        }
        Ok(RIRecurrence { c, lambda, shift })
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    pub fn lambda(&self) -> &[Complex64] {
        &self.lambda
    }

    pub fn shift(&self) -> &[Complex64] {
        &self.shift
    }

    /// Number of recurrence steps the stored data supports.
    pub fn len(&self) -> usize {
        self.c.len().min(self.lambda.len()).min(self.shift.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every shift is zero, i.e. the recurrence is of T-fraction type.
    pub fn is_t_fraction(&self) -> bool {
        self.shift.iter().all(|&a| a == ZERO)
    }

    fn at(seq: &[Complex64], name: &'static str, n: usize) -> Result<Complex64> {
        seq.get(n - 1)
            .copied()
            .ok_or(Error::SequenceExhausted { name, index: n })
    }
}

/// One failed non-degeneracy condition.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// `λ_{n+1}` vanishes (`index` is `n + 1`).
    LambdaZero { index: usize },
    /// `P_n(a_m)` vanishes for the shift `a_m`.
    ShiftRoot {
        n: usize,
        shift_index: usize,
        value: Complex64,
    },
}

/// Non-degeneracy conditions checked along a run of [`ri_generate`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
    /// Smallest `|λ_{n+1}|` seen, for `1 ≤ n < N`.
    pub min_lambda: f64,
    /// Smallest `|P_n(a)| / Σ|coeff||a|^k` over the checked pairs.
    pub min_shift_value: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Monic `P_0..=P_N` with `P_{-1} = 0`, `P_0 = 1`.
///
/// The report checks `λ_{n+1} ≠ 0` for `1 ≤ n < N`, and for `1 ≤ n ≤ N`
/// both `P_n(a_n) ≠ 0` and, where `a_{n+1}` is stored, `P_n(a_{n+1}) ≠ 0`.
/// `λ_1` multiplies `P_{-1} = 0` and is never checked.
pub fn ri_generate(rec: &RIRecurrence, big_n: usize) -> Result<(Vec<Poly>, ValidityReport)> {
    let mut polys = vec![Poly::one()];
    for n in 1..=big_n {
        let c = RIRecurrence::at(&rec.c, "c", n)?;
        let lambda = RIRecurrence::at(&rec.lambda, "lambda", n)?;
        let shift = RIRecurrence::at(&rec.shift, "shift", n)?;
        let prev = &polys[n - 1];
        let mut next = &prev.shift(1) - &prev.scale(c);
        if n >= 2 {
            let older = &polys[n - 2];
            let tail = &older.shift(1) - &older.scale(shift);
            next = &next - &tail.scale(lambda);
        }
        if next.coeffs().iter().any(|v| !v.is_finite()) {
            return Err(Error::Overflow(format!("P_{n}")));
        }
        polys.push(next);
    }

    let mut report = ValidityReport {
        min_lambda: f64::INFINITY,
        min_shift_value: f64::INFINITY,
        ..Default::default()
    };
    for n in 1..big_n {
        let lam = rec.lambda[n];
        report.min_lambda = report.min_lambda.min(lam.norm());
        if lam.norm() <= VANISHING_TOL {
            report
                .violations
                .push(Violation::LambdaZero { index: n + 1 });
        }
    }
    for n in 1..=big_n {
        for m in [n, n + 1] {
            let Some(&a) = rec.shift.get(m - 1) else {
                continue;
            };
            let p = &polys[n];
            let value = p.eval(a);
            let rel = value.norm() / p.eval_abs(a);
            report.min_shift_value = report.min_shift_value.min(rel);
            if rel <= VANISHING_TOL {
                report.violations.push(Violation::ShiftRoot {
                    n,
                    shift_index: m,
                    value,
                });
            }
        }
    }
    Ok((polys, report))
}

/// `c_n = -δ_n`, `λ_n = δ_{n-1}`, `a_n = 0` for `1 ≤ n ≤ N`.
pub fn tfraction_from_hyp(params: &HypParams, big_n: usize) -> Result<RIRecurrence> {
    let deltas = (0..=big_n)
        .map(|k| delta_k(params, k))
        .collect::<Result<Vec<_>>>()?;
    let c = (1..=big_n).map(|n| -deltas[n]).collect();
    let lambda = (1..=big_n).map(|n| deltas[n - 1]).collect();
    RIRecurrence::new(c, lambda, vec![ZERO; big_n])
}
