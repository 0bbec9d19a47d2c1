//! Evaluation of `pFq`, the two integral representations of `g_n`, and the
//! convergence of `g_n` to `pFq`.

use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyp::{check_cap, gn_direct, HypParams};
use crate::poly::{Poly, ONE, ZERO};

/// Maximum number of series terms summed by [`pfq_eval`].
pub const TERM_CAP: usize = 10_000;
/// Default relative size at which a term counts as negligible.
pub const DEFAULT_SERIES_TOL: f64 = 1e-17;
/// Consecutive negligible terms required to stop.
const SMALL_RUN: usize = 3;
/// Default node count of the circle representation.
pub const DEFAULT_CIRCLE_NODES: usize = 4096;
/// Gauss–Legendre points of the negative-axis cross-check.
pub const AXIS_GAUSS_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainClass {
    /// `p ≤ q`: the series converges everywhere.
    Entire,
    /// `p = q + 1`: radius of convergence one.
    UnitDisk,
    /// `p > q + 1`: converges only at the origin.
    Divergent,
}

impl DomainClass {
    pub fn of(params: &HypParams) -> Self {
        let (p, q) = (params.p(), params.q());
        if p <= q {
            DomainClass::Entire
        } else if p == q + 1 {
            DomainClass::UnitDisk
        } else {
            DomainClass::Divergent
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DomainClass::Entire => "entire",
            DomainClass::UnitDisk => "unit-disk",
            DomainClass::Divergent => "divergent",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PfqValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub domain_class: DomainClass,
}

/// Sums the series until `SMALL_RUN` consecutive terms fall below
/// `tol · |sum|`; `None` if [`TERM_CAP`] terms do not get there.
fn sum_series(params: &HypParams, z: Complex64, tol: f64) -> Option<(Complex64, usize)> {
    let mut term = ONE;
    let mut sum = ONE;
    let mut run = 0;
    for k in 0..TERM_CAP {
        term = term * params.shifted_ratio(k) * z / (k as f64 + 1.0);
        sum += term;
        if !sum.is_finite() {
            return None;
        }
        if term.norm() < tol * sum.norm() || term == ZERO {
            run += 1;
            if run == SMALL_RUN {
                return Some((sum, k + 2));
            }
        } else {
            run = 0;
        }
    }
    None
}

/// `pFq(a; b; z)` by direct summation inside its domain of convergence.
pub fn pfq_eval(params: &HypParams, z: Complex64, tol: f64) -> Result<PfqValue> {
    let domain_class = DomainClass::of(params);
    match domain_class {
        DomainClass::UnitDisk if z.norm() >= 1.0 => {
            return Err(Error::Domain(format!(
                "|z| = {} is not inside the unit disk",
                z.norm()
            )))
        }
        DomainClass::Divergent if z != ZERO => {
            return Err(Error::Domain(
                "the series with p > q + 1 converges only at z = 0".into(),
            ))
        }
        DomainClass::Divergent => {
            return Ok(PfqValue {
                value: ONE,
                terms_used: 1,
                domain_class,
            })
        }
        _ => {}
    }
    let (value, terms_used) = sum_series(params, z, tol).ok_or(Error::NoConvergence {
        iterations: TERM_CAP,
    })?;
    Ok(PfqValue {
        value,
        terms_used,
        domain_class,
    })
}

/// `Σ_{k=0}^n u^k`, in closed form when `|1 - u| ≥ 1e-6`.
pub fn dirichlet_sum(u: Complex64, n: usize) -> Complex64 {
    if (ONE - u).norm() >= 1e-6 {
        (ONE - u.powu(n as u32 + 1)) / (ONE - u)
    } else {
        (0..n).fold(ONE, |acc, _| acc * u + ONE)
    }
}

/// `Σ |ξ_k|`, which bounds `|g_n|` and `|pFq|` on the unit circle when `p ≤ q`.
pub fn circle_scale(params: &HypParams) -> Result<f64> {
    if DomainClass::of(params) != DomainClass::Entire {
        return Err(Error::Precondition("circle scale needs p <= q".into()));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut run = 0;
    for k in 0..TERM_CAP {
        term *= params.shifted_ratio(k).norm() / (k as f64 + 1.0);
        sum += term;
        if term < DEFAULT_SERIES_TOL * sum {
            run += 1;
            if run == SMALL_RUN {
                return Ok(sum);
            }
        } else {
            run = 0;
        }
    }
    Err(Error::NoConvergence {
        iterations: TERM_CAP,
    })
}

/// Samples of `pFq` on an equispaced grid of the unit circle, reused for any
/// `n` and `τ` of the representation
/// `g_n(e^{iτ}) = (1/2π) ∫_0^{2π} D_n(e^{i(τ-t)}) pFq(e^{it}) dt`.
#[derive(Clone, Debug)]
pub struct CircleRepresentation {
    angles: Vec<f64>,
    values: Vec<Complex64>,
}

impl CircleRepresentation {
    pub fn new(params: &HypParams, n_nodes: usize) -> Result<Self> {
        if params.p() > params.q() {
            return Err(Error::Precondition(format!(
                "the circle representation needs p <= q, got p = {}, q = {}",
                params.p(),
                params.q()
            )));
        }
        if n_nodes == 0 {
            return Err(Error::Precondition(
                "quadrature needs at least one node".into(),
            ));
        }
        let angles: Vec<f64> = (0..n_nodes)
            .map(|j| TAU * j as f64 / n_nodes as f64)
            .collect();
        let values = angles
            .iter()
            .map(|&t| {
                Ok(pfq_eval(params, Complex64::from_polar(1.0, t), DEFAULT_SERIES_TOL)?.value)
            })
            .collect::<Result<_>>()?;
        Ok(CircleRepresentation { angles, values })
    }

    /// The quadrature value of the representation at `e^{iτ}`.
    pub fn eval(&self, n: usize, tau: f64) -> Complex64 {
        let sum = self
            .angles
            .iter()
            .zip(&self.values)
            .fold(ZERO, |acc, (&t, &f)| {
                acc + dirichlet_sum(Complex64::from_polar(1.0, tau - t), n) * f
            });
        sum / self.angles.len() as f64
    }
}

/// Quadrature value of the circle representation of `g_n(e^{iτ})`.
pub fn integral_rep_circle(
    params: &HypParams,
    n: usize,
    tau: f64,
    n_nodes: usize,
) -> Result<Complex64> {
    check_cap(n)?;
    Ok(CircleRepresentation::new(params, n_nodes)?.eval(n, tau))
}

/// `{}_{p+1}F_{q+1}(-n, a; -n-1, b; t)`, a polynomial of degree exactly `n`.
pub fn terminating_pfq_poly(params: &HypParams, n: usize) -> Result<Poly> {
    check_cap(n)?;
    let nf = n as f64;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = ONE;
    coeffs.push(c);
    for k in 0..n {
        let kf = k as f64;
        c = c * params.shifted_ratio(k) * ((-nf + kf) / ((-nf - 1.0 + kf) * (kf + 1.0)));
        if !c.is_finite() || c == ZERO {
            return Err(Error::Overflow(format!(
                "terminating series coefficient {}",
                k + 1
            )));
        }
        coeffs.push(c);
    }
    Ok(Poly::new(coeffs))
}

fn check_negative(x: f64) -> Result<()> {
    if x < 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the axis representation needs x < 0, got {x}"
        )))
    }
}

/// `-(n+1) x^{n+1} ∫_{-∞}^x t^{-n-2} F(t) dt` with `F` the terminating series,
/// integrated term by term: `∫_{-∞}^x t^{k-n-2} dt = x^{k-n-1} / (k-n-1)`.
pub fn integral_rep_negative_axis(params: &HypParams, n: usize, x: f64) -> Result<Complex64> {
    check_negative(x)?;
    let inner = terminating_pfq_poly(params, n)?;
    let xc = Complex64::new(x, 0.0);
    let integral: Complex64 = inner
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let e = k as i32 - n as i32 - 1;
            t * xc.powi(e) / e as f64
        })
        .sum();
    Ok(-(n as f64 + 1.0) * xc.powi(n as i32 + 1) * integral)
}

/// The same integral by Gauss–Legendre quadrature after `t = x/u`, `u ∈ (0, 1]`.
pub fn integral_rep_negative_axis_quadrature(
    params: &HypParams,
    n: usize,
    x: f64,
) -> Result<Complex64> {
    check_negative(x)?;
    let inner = terminating_pfq_poly(params, n)?;
    let rule = GaussLegendre::new(NonZeroUsize::new(AXIS_GAUSS_POINTS).expect("nonzero"));
    let integrand = |u: f64| {
        let t = x / u;
        let tc = Complex64::new(t, 0.0);
        tc.powi(-(n as i32) - 2) * inner.eval(tc) * (-x / (u * u))
    };
    let mut acc = ZERO;
    for &(node, weight) in rule.iter() {
        acc += integrand(0.5 * (node + 1.0)) * (0.5 * weight);
    }
    Ok(-(n as f64 + 1.0) * Complex64::new(x, 0.0).powi(n as i32 + 1) * acc)
}

/// Absolute-value scale `Σ |ξ_k| |x|^k` of `g_n(x)`.
pub fn axis_scale(params: &HypParams, n: usize, x: f64) -> Result<f64> {
    Ok(gn_direct(params, n)?.eval_abs(Complex64::new(x, 0.0)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `sup |g_n - pFq|` over the samples where `pFq` was obtained; `None`
    /// when there were none.
    pub sup_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub domain_class: DomainClass,
    pub rows: Vec<ConvergenceRow>,
    /// Sample points on the unit circle where the series for `p = q + 1`
    /// failed the convergence test; excluded from the sup.
    pub unconverged_samples: Vec<Complex64>,
    /// Whether `sup_error` is non-increasing along `rows` up to `1e-12`.
    pub monotone: bool,
}

/// `sup |g_n(z) - pFq(z)|` over `samples` for each `n` in `n_list`.
///
/// For `p ≤ q` samples may lie anywhere. For `p = q + 1` they must satisfy
/// `|z| ≤ 1`; points on the circle are summed with the same stopping rule
/// and reported in `unconverged_samples` if it fails.
pub fn convergence_report(
    params: &HypParams,
    n_list: &[usize],
    samples: &[Complex64],
) -> Result<ConvergenceReport> {
    let domain_class = DomainClass::of(params);
    let mut unconverged_samples = Vec::new();
    let mut targets = Vec::with_capacity(samples.len());
    for &z in samples {
        match domain_class {
            DomainClass::Divergent => {
                return Err(Error::Domain("convergence needs p <= q + 1".into()))
            }
            DomainClass::Entire => {
                targets.push((z, pfq_eval(params, z, DEFAULT_SERIES_TOL)?.value))
            }
            DomainClass::UnitDisk => {
                if z.norm() > 1.0 + 1e-12 {
                    return Err(Error::Domain(format!(
                        "sample {z} lies outside the closed unit disk"
                    )));
                }
                if z.norm() < 1.0 {
                    targets.push((z, pfq_eval(params, z, DEFAULT_SERIES_TOL)?.value));
                } else {
                    match sum_series(params, z, DEFAULT_SERIES_TOL) {
                        Some((v, _)) => targets.push((z, v)),
                        None => unconverged_samples.push(z),
                    }
                }
            }
        }
    }
    let rows: Vec<ConvergenceRow> = n_list
        .iter()
        .map(|&n| {
            let g = gn_direct(params, n)?;
            let sup_error = targets
                .iter()
                .map(|&(z, f)| (g.eval(z) - f).norm())
                .reduce(f64::max);
            Ok(ConvergenceRow { n, sup_error })
        })
        .collect::<Result<_>>()?;
    let errs: Vec<f64> = rows.iter().filter_map(|r| r.sup_error).collect();
    let monotone = errs.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Ok(ConvergenceReport {
        domain_class,
        rows,
        unconverged_samples,
        monotone,
    })
}
