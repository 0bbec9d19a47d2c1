//! Partial sums `g_n` of the generalized hypergeometric series, their monic
//! rescalings `G_n`, and the partial sums of an arbitrary power series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Poly, DEGREE_CAP, ONE, ZERO};

/// Distance below which a parameter counts as hitting `{0, -1, -2, ...}`.
pub const EXCLUSION_TOL: f64 = 1e-12;

/// Upper parameters `a_1..a_p` and lower parameters `b_1..b_q` of `pFq`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypParams {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl HypParams {
    /// Validates every parameter against the excluded set
    /// `{0, -1, ..., -DEGREE_CAP}` with tolerance [`EXCLUSION_TOL`].
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        for (name, list) in [("a", &a), ("b", &b)] {
            for (i, v) in list.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite("hypergeometric parameters"));
                }
                if near_nonpositive_integer(*v, EXCLUSION_TOL) {
                    return Err(Error::ExcludedParameter {
                        name: format!("{name}_{}", i + 1),
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(HypParams { a, b })
    }

    pub fn from_real(a: &[f64], b: &[f64]) -> Result<Self> {
        let lift = |xs: &[f64]| xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        HypParams::new(lift(a), lift(b))
    }

    /// `p = q = 0`, the exponential series.
    pub fn exponential() -> Self {
        HypParams {
            a: Vec::new(),
            b: Vec::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// Order `max(p, q + 1)` of the operator `R`.
    pub fn rho(&self) -> usize {
        self.p().max(self.q() + 1)
    }

    /// Whether all parameters are real (imaginary parts exactly zero).
    pub fn is_real(&self) -> bool {
        self.a.iter().chain(&self.b).all(|v| v.im == 0.0)
    }

    /// `Π(a_j + k) / Π(b_l + k)`, empty products being one.
    pub(crate) fn shifted_ratio(&self, k: usize) -> Complex64 {
        let kf = k as f64;
        let num = self.a.iter().fold(ONE, |acc, &a| acc * (a + kf));
        let den = self.b.iter().fold(ONE, |acc, &b| acc * (b + kf));
        num / den
    }
}

fn near_nonpositive_integer(v: Complex64, tol: f64) -> bool {
    if v.im.abs() >= tol || v.re > tol {
        return false;
    }
    let m = (-v.re).round();
    m <= DEGREE_CAP as f64 && (v + m).norm() < tol
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    if n > DEGREE_CAP {
        Err(Error::DegreeCap { n, cap: DEGREE_CAP })
    } else {
        Ok(())
    }
}

fn finite_nonzero(x: Complex64, what: impl FnOnce() -> String) -> Result<Complex64> {
    if x.is_finite() && x != ZERO {
        Ok(x)
    } else {
        Err(Error::Overflow(what()))
    }
}

/// Series coefficients `ξ_0..=ξ_n`, with
/// `ξ_k = (a_1)_k...(a_p)_k / ((b_1)_k...(b_q)_k k!)`.
///
/// Built by the incremental ratio `ξ_{k+1} = ξ_k Π(a_j+k) / (Π(b_l+k)(k+1))`.
pub fn hyp_coeffs(params: &HypParams, n: usize) -> Result<Vec<Complex64>> {
    check_cap(n)?;
    let mut xi = Vec::with_capacity(n + 1);
    xi.push(ONE);
    for k in 0..n {
        let next = xi[k] * params.shifted_ratio(k) / (k as f64 + 1.0);
        xi.push(finite_nonzero(next, || format!("xi_{}", k + 1))?);
    }
    Ok(xi)
}

/// A single series coefficient `ξ_k`.
pub fn hyp_coeff(params: &HypParams, k: usize) -> Result<Complex64> {
    Ok(hyp_coeffs(params, k)?[k])
}

/// `g_n(z) = Σ_{k≤n} ξ_k z^k` from the explicit coefficients.
pub fn gn_direct(params: &HypParams, n: usize) -> Result<Poly> {
    Ok(Poly::new(hyp_coeffs(params, n)?))
}

/// `g_0..=g_N` from the three-term relation
/// `δ_{n+1} (g_{n+1} - g_n) = z (g_n - g_{n-1})` with `g_{-1} = 0`.
pub fn gn_by_recurrence(params: &HypParams, big_n: usize) -> Result<Vec<Poly>> {
    check_cap(big_n)?;
    let mut out = vec![Poly::one()];
    for n in 0..big_n {
        let diff = match n {
            0 => out[0].clone(),
            _ => &out[n] - &out[n - 1],
        };
        let step = diff.shift(1).scale(ONE / delta_k(params, n + 1)?);
        let next = &out[n] + &step;
        if next.coeffs().iter().any(|c| !c.is_finite()) || next.degree() != Some(n + 1) {
            return Err(Error::Overflow(format!("g_{} by recurrence", n + 1)));
        }
        out.push(next);
    }
    Ok(out)
}

/// `δ_0 = 0`, `δ_k = k Π(b_l + k - 1) / Π(a_j + k - 1)` for `k ≥ 1`.
pub fn delta_k(params: &HypParams, k: usize) -> Result<Complex64> {
    check_cap(k)?;
    if k == 0 {
        return Ok(ZERO);
    }
    let d = k as f64 / params.shifted_ratio(k - 1);
    finite_nonzero(d, || format!("delta_{k}"))
}

/// `n! (b_1)_n...(b_q)_n / ((a_1)_n...(a_p)_n) = 1 / ξ_n`, the factor turning
/// `g_n` into the monic `G_n`.
pub fn monic_factor(params: &HypParams, n: usize) -> Result<Complex64> {
    check_cap(n)?;
    let mut f = ONE;
    for k in 1..=n {
        f = finite_nonzero(f * delta_k(params, k)?, || {
            format!("monic factor at n = {n}")
        })?;
    }
    Ok(f)
}

/// Monic `G_n = g_n / ξ_n`.
pub fn gn_monic(params: &HypParams, n: usize) -> Result<Poly> {
    let g = gn_direct(params, n)?;
    let factor = monic_factor(params, n)?;
    let mut coeffs: Vec<Complex64> = g.coeffs().iter().map(|&c| c * factor).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Overflow(format!("G_{n}")));
    }
    // The product ξ_n · (1/ξ_n) is one up to rounding; pin it.
    coeffs[n] = ONE;
    Ok(Poly::new(coeffs))
}

/// `G_0..=G_N` from `G_n = (z + δ_n) G_{n-1} - δ_{n-1} z G_{n-2}`, `G_{-1} = 0`.
pub fn gn_monic_by_recurrence(params: &HypParams, big_n: usize) -> Result<Vec<Poly>> {
    check_cap(big_n)?;
    let deltas = (0..=big_n)
        .map(|k| delta_k(params, k))
        .collect::<Result<Vec<_>>>()?;
    monic_three_term(big_n, |n| deltas[n], |n| deltas[n - 1])
}

/// The monic recurrence run on moduli, `|G|_n = (z + |δ_n|)|G|_{n-1} +
/// |δ_{n-1}| z |G|_{n-2}`: a coefficientwise bound on every term the
/// recurrence adds, and so the scale of its rounding error.
pub fn gn_monic_recurrence_scale(params: &HypParams, big_n: usize) -> Result<Vec<Poly>> {
    check_cap(big_n)?;
    let deltas = (0..=big_n)
        .map(|k| Ok(Complex64::new(delta_k(params, k)?.norm(), 0.0)))
        .collect::<Result<Vec<_>>>()?;
    monic_three_term(big_n, |n| deltas[n], |n| -deltas[n - 1])
}

/// Runs `F_n = (z + u_n) F_{n-1} - v_n z F_{n-2}` with `F_{-1} = 0`, `F_0 = 1`.
fn monic_three_term(
    big_n: usize,
    u: impl Fn(usize) -> Complex64,
    v: impl Fn(usize) -> Complex64,
) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = vec![Poly::one()];
    for n in 1..=big_n {
        let prev = &out[n - 1];
        let mut next = &prev.shift(1) + &prev.scale(u(n));
        if n >= 2 {
            next = &next - &out[n - 2].shift(1).scale(v(n));
        }
        if next.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::Overflow(format!("monic polynomial of degree {n}")));
        }
        out.push(next);
    }
    Ok(out)
}

/// Nonzero coefficients `d_0, d_1, ...` of a power series `Σ d_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesCoeffs {
    d: Vec<Complex64>,
}

impl PowerSeriesCoeffs {
    pub fn new(d: Vec<Complex64>) -> Result<Self> {
        for (index, c) in d.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite("power series coefficients"));
            }
            if c.norm() < 1e-300 {
                return Err(Error::ZeroCoefficient { index });
            }
        }
        Ok(PowerSeriesCoeffs { d })
    }

    pub fn from_real(d: &[f64]) -> Result<Self> {
        PowerSeriesCoeffs::new(d.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The hypergeometric coefficients `ξ_0..=ξ_n`.
    pub fn hypergeometric(params: &HypParams, n: usize) -> Result<Self> {
        PowerSeriesCoeffs::new(hyp_coeffs(params, n)?)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }
}

/// Partial sums `f_0..=f_N` and their monic versions `F_n = f_n / d_n`, the
/// latter generated by
/// `F_n = (z + d_{n-1}/d_n) F_{n-1} - (d_{n-2}/d_{n-1}) z F_{n-2}`
/// with `F_{-1} = 0` and `d_{-1} = 1`.
pub fn generic_partial_sums(d: &PowerSeriesCoeffs, big_n: usize) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let d = d.as_slice();
    if big_n >= d.len() {
        return Err(Error::SequenceExhausted {
            name: "d",
            index: big_n,
        });
    }
    let partial = (0..=big_n).map(|n| Poly::new(d[..=n].to_vec())).collect();
    let d_at = |k: isize| if k < 0 { ONE } else { d[k as usize] };
    let monic = monic_three_term(
        big_n,
        |n| d_at(n as isize - 1) / d_at(n as isize),
        |n| d_at(n as isize - 2) / d_at(n as isize - 1),
    )?;
    Ok((partial, monic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeffs_close;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn coefficient_examples() {
        let exp = HypParams::exponential();
        assert!((hyp_coeff(&exp, 3).unwrap() - r(1.0 / 6.0)).norm() < 1e-16);
        let p = HypParams::from_real(&[2.0], &[4.0]).unwrap();
        assert_eq!(hyp_coeff(&p, 0).unwrap(), ONE);
        assert!((hyp_coeff(&p, 2).unwrap() - r(0.15)).norm() < 1e-16);
    }

    #[test]
    fn direct_examples() {
        let exp = HypParams::exponential();
        assert_eq!(gn_direct(&exp, 0).unwrap(), Poly::one());
        assert_eq!(
            gn_direct(&exp, 2).unwrap(),
            Poly::from_real(&[1.0, 1.0, 0.5])
        );
        let geo = HypParams::from_real(&[1.0], &[]).unwrap();
        assert_eq!(gn_direct(&geo, 3).unwrap(), Poly::from_real(&[1.0; 4]));
    }

    #[test]
    fn recurrence_examples() {
        let gs = gn_by_recurrence(&HypParams::exponential(), 2).unwrap();
        assert_eq!(gs[0], Poly::one());
        assert_eq!(gs[1], Poly::from_real(&[1.0, 1.0]));
        assert_eq!(gs[2], Poly::from_real(&[1.0, 1.0, 0.5]));
    }

    #[test]
    fn delta_examples() {
        let p = HypParams::from_real(&[1.0], &[2.0]).unwrap();
        assert_eq!(delta_k(&p, 0).unwrap(), ZERO);
        assert_eq!(delta_k(&HypParams::exponential(), 3).unwrap(), r(3.0));
        assert!((delta_k(&p, 3).unwrap() - r(4.0)).norm() < 1e-15);
    }

    #[test]
    fn monic_examples() {
        let exp = HypParams::exponential();
        assert_eq!(gn_monic(&exp, 0).unwrap(), Poly::one());
        assert_eq!(
            gn_monic(&exp, 2).unwrap(),
            Poly::from_real(&[2.0, 2.0, 1.0])
        );
        let gs = gn_monic_by_recurrence(&exp, 3).unwrap();
        assert_eq!(gs[1], Poly::from_real(&[1.0, 1.0]));
        assert_eq!(gs[2], Poly::from_real(&[2.0, 2.0, 1.0]));
        assert_eq!(gs[3], Poly::from_real(&[6.0, 6.0, 3.0, 1.0]));
    }

    #[test]
    fn first_monic_step_is_z_plus_delta_one() {
        let p = HypParams::from_real(&[0.3, 2.5], &[1.7]).unwrap();
        let gs = gn_monic_by_recurrence(&p, 1).unwrap();
        let d1 = delta_k(&p, 1).unwrap();
        assert_eq!(gs[1], Poly::new(vec![d1, ONE]));
    }

    #[test]
    fn generic_examples() {
        let ones = PowerSeriesCoeffs::from_real(&[1.0; 6]).unwrap();
        let (f, big_f) = generic_partial_sums(&ones, 5).unwrap();
        assert_eq!(f, big_f);
        assert_eq!(f[4], Poly::from_real(&[1.0; 5]));

        let d = PowerSeriesCoeffs::from_real(&[1.0, 1.0, 0.5]).unwrap();
        let (_, big_f) = generic_partial_sums(&d, 2).unwrap();
        assert_eq!(big_f[2], Poly::from_real(&[2.0, 2.0, 1.0]));

        let p = HypParams::from_real(&[0.5, 1.5], &[2.5]).unwrap();
        let xi = PowerSeriesCoeffs::hypergeometric(&p, 12).unwrap();
        let (f, big_f) = generic_partial_sums(&xi, 12).unwrap();
        for n in 0..=12 {
            assert!(coeffs_close(&f[n], &gn_direct(&p, n).unwrap(), 1e-12));
            assert!(coeffs_close(&big_f[n], &gn_monic(&p, n).unwrap(), 1e-12));
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            HypParams::from_real(&[-3.0], &[]),
            Err(Error::ExcludedParameter { .. })
        ));
        assert!(HypParams::from_real(&[], &[0.0]).is_err());
        assert!(HypParams::from_real(&[], &[-2.0 + 1e-13]).is_err());
        assert!(HypParams::from_real(&[], &[-2.0 + 1e-9]).is_ok());
        assert!(HypParams::from_real(&[-0.5], &[3.0]).is_ok());
        assert!(matches!(
            gn_direct(&HypParams::exponential(), DEGREE_CAP + 1),
            Err(Error::DegreeCap { .. })
        ));
        assert!(PowerSeriesCoeffs::from_real(&[1.0, 0.0]).is_err());
        let d = PowerSeriesCoeffs::from_real(&[1.0, 2.0]).unwrap();
        assert!(generic_partial_sums(&d, 2).is_err());
    }
}
