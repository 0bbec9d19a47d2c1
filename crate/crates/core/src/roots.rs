//! Zeros of polynomials by simultaneous (Aberth–Ehrlich) iteration, and the
//! localization report for the zeros of `g_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyp::{gn_direct, HypParams};
use crate::poly::{Poly, ONE, ZERO};

pub const MAX_ITERATIONS: usize = 500;
/// Convergence threshold on the relative Aberth correction.
pub const DEFAULT_ROOT_TOL: f64 = 1e-14;
/// Angular offset of the starting circle.
const START_ANGLE: f64 = 0.37;
const POLISH_STEPS: usize = 3;

/// Fujiwara's bound `2 max_k |a_{n-k}/a_n|^{1/k}` on every root modulus.
fn fujiwara_bound(monic: &[Complex64]) -> f64 {
    let n = monic.len() - 1;
    (1..=n)
        .map(|k| monic[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        * 2.0
}

/// Positive root of `x^n - Σ_{k<n} |a_k/a_n| x^k`, the Cauchy radius bounding
/// every root modulus, by Newton's method descending from Fujiwara's bound.
fn cauchy_radius(monic: &[Complex64]) -> f64 {
    let n = monic.len() - 1;
    let mags: Vec<f64> = monic[..n].iter().map(|c| c.norm()).collect();
    let h = |x: f64| {
        let mut val = 1.0;
        let mut der = 0.0;
        for &m in mags.iter().rev() {
            der = der * x + val;
            val = val * x - m;
        }
        (val, der)
    };
    let start = fujiwara_bound(monic);
    let mut x = start;
    for _ in 0..200 {
        let (v, d) = h(x);
        if !(v.is_finite() && d.is_finite()) {
            return start;
        }
        if v <= 0.0 || d <= 0.0 {
            break;
        }
        let next = x - v / d;
        if next >= x || x - next <= 1e-15 * x {
            x = next;
            break;
        }
        x = next;
    }
    if x.is_finite() && x > 0.0 {
        x
    } else {
        start
    }
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn eval_abs(coeffs: &[Complex64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All `deg f` roots of `f`, with multiplicity.
///
/// Roots at the origin are split off exactly; the rest start on a circle of
/// the Cauchy radius offset by a fixed angle and are refined by Aberth
/// corrections until every correction is below `tol` relative to the root or
/// the polynomial value is at rounding level. A few damped Newton steps
/// polish the result.
pub fn find_roots(f: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::Precondition(
                "root finding needs a polynomial of degree at least one".into(),
            ))
        }
    };
    let lead = f.coeff(deg);
    let zeros_at_origin = f.coeffs().iter().take_while(|c| **c == ZERO).count();
    let mut roots = vec![ZERO; zeros_at_origin];
    let monic: Vec<Complex64> = f.coeffs()[zeros_at_origin..]
        .iter()
        .map(|&c| c / lead)
        .collect();
    let n = monic.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let radius = cauchy_radius(&monic);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + START_ANGLE;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let noise = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
    let mut converged = vec![false; n];
    let mut iterations = 0;
    while converged.iter().any(|c| !c) {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NoConvergence { iterations });
        }
        iterations += 1;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() <= noise * eval_abs(&monic, z[i].norm()) {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| ONE / (z[i] - z[j]))
                .sum();
            let corr = ratio / (ONE - ratio * repulsion);
            if !corr.is_finite() {
                continue;
            }
            z[i] -= corr;
            if corr.norm() <= tol * z[i].norm() {
                converged[i] = true;
            }
        }
    }
    for zi in z.iter_mut() {
        polish(&monic, zi);
    }
    roots.extend(z);
    Ok(roots)
}

fn polish(coeffs: &[Complex64], z: &mut Complex64) {
    for _ in 0..POLISH_STEPS {
        let (p, dp) = eval_with_derivative(coeffs, *z);
        if p == ZERO || dp == ZERO {
            return;
        }
        let step = p / dp;
        let mut damping = 1.0;
        let mut improved = false;
        for _ in 0..4 {
            let trial = *z - step * damping;
            if eval_with_derivative(coeffs, trial).0.norm() < p.norm() {
                *z = trial;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if !improved {
            return;
        }
    }
}

/// Smallest pairwise distance, `+∞` for fewer than two roots.
pub fn min_pair_distance(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

/// Distance threshold `1e-7 × max root modulus` used when none is given.
pub fn default_simple_tol(roots: &[Complex64]) -> f64 {
    1e-7 * roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
}

/// Whether all roots are pairwise farther apart than `tol`.
pub fn check_simple(roots: &[Complex64], tol: f64) -> bool {
    min_pair_distance(roots) > tol
}

/// Annulus `[min d_k/d_{k+1}, max d_k/d_{k+1}]` containing every root of a
/// polynomial with positive coefficients.
pub fn enestrom_kakeya_bounds(f: &Poly) -> Result<(f64, f64)> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition(
            "annulus needs degree at least one".into(),
        ));
    }
    let mut real = Vec::with_capacity(f.coeffs().len());
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.im.abs() > 1e-14 * c.re.abs() || c.re <= 0.0 {
            return Err(Error::Precondition(format!(
                "coefficient {k} = {c} is not a positive real"
            )));
        }
        real.push(c.re);
    }
    let ratios = real.windows(2).map(|w| w[0] / w[1]);
    let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
        (lo.min(r), hi.max(r))
    });
    Ok((lo, hi))
}

/// Coefficientwise relative error of `lead · Π(z - r_k)` against `f`, each
/// coefficient measured against the same expansion of `|lead| Π(z + |r_k|)`.
pub fn reconstruction_error(f: &Poly, roots: &[Complex64]) -> f64 {
    let lead = f.leading().unwrap_or(ZERO);
    let (prod, bound) = roots.iter().fold(
        (
            Poly::constant(lead),
            Poly::constant(Complex64::new(lead.norm(), 0.0)),
        ),
        |(p, b), &r| {
            (
                p.mul(&Poly::new(vec![-r, ONE])),
                b.mul(&Poly::new(vec![Complex64::new(r.norm(), 0.0), ONE])),
            )
        },
    );
    let len = f.coeffs().len().max(prod.coeffs().len());
    (0..len)
        .map(|k| {
            let diff = (prod.coeff(k) - f.coeff(k)).norm();
            if diff == 0.0 {
                0.0
            } else {
                diff / bound.coeff(k).norm()
            }
        })
        .fold(0.0, f64::max)
}

/// Distance from the ray `(1, ∞)` below which a root counts as lying on it.
pub const RAY_TOL: f64 = 1e-8;
/// Slack on the unit circle when classifying moduli.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    pub min_pair_distance: f64,
    pub min_modulus: f64,
    pub simple: bool,
    /// A root with `|Im| < 1e-8` and `Re > 1`.
    pub positive_real_root_found: bool,
    /// Roots with `||z| - 1| ≤ 1e-9`, kept apart from the exterior verdict.
    pub boundary_roots: Vec<Complex64>,
    pub ek_annulus: Option<(f64, f64)>,
}

impl RootReport {
    pub fn from_roots(roots: Vec<Complex64>, ek_annulus: Option<(f64, f64)>) -> Self {
        let min_pair_distance = min_pair_distance(&roots);
        let simple = check_simple(&roots, default_simple_tol(&roots));
        let min_modulus = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
        let positive_real_root_found = roots.iter().any(|r| r.im.abs() < RAY_TOL && r.re > 1.0);
        let boundary_roots = roots
            .iter()
            .copied()
            .filter(|r| (r.norm() - 1.0).abs() <= BOUNDARY_TOL)
            .collect();
        RootReport {
            roots,
            min_pair_distance,
            min_modulus,
            simple,
            positive_real_root_found,
            boundary_roots,
            ek_annulus,
        }
    }

    /// Every root has modulus at least `1 - 1e-9`.
    pub fn outside_open_disk(&self) -> bool {
        self.min_modulus >= 1.0 - BOUNDARY_TOL
    }
}

/// Checks `p ≤ q`, real parameters, `0 < a_j ≤ b_j` for `j ≤ p` and
/// `b_k ≥ 1` for `k > p`.
pub fn zero_localization_conditions(params: &HypParams) -> Result<()> {
    if params.p() > params.q() {
        return Err(Error::Precondition(format!(
            "zero localization needs p <= q, got p = {}, q = {}",
            params.p(),
            params.q()
        )));
    }
    if !params.is_real() {
        return Err(Error::Precondition(
            "zero localization needs real parameters".into(),
        ));
    }
    for (j, (a, b)) in params.a().iter().zip(params.b()).enumerate() {
        if !(a.re > 0.0 && a.re <= b.re) {
            return Err(Error::Precondition(format!(
                "need 0 < a_{0} <= b_{0}, got a_{0} = {1}, b_{0} = {2}",
                j + 1,
                a.re,
                b.re
            )));
        }
    }
    for (k, b) in params.b().iter().enumerate().skip(params.p()) {
        if b.re < 1.0 {
            return Err(Error::Precondition(format!(
                "need b_{} >= 1, got {}",
                k + 1,
                b.re
            )));
        }
    }
    Ok(())
}

/// Zeros of `g_n` with the localization diagnostics. Refuses parameters
/// outside [`zero_localization_conditions`].
pub fn location_report(params: &HypParams, n: usize) -> Result<RootReport> {
    zero_localization_conditions(params)?;
    let g = gn_direct(params, n)?;
    if n == 0 {
        return Ok(RootReport::from_roots(Vec::new(), None));
    }
    let roots = find_roots(&g, DEFAULT_ROOT_TOL)?;
    let annulus = enestrom_kakeya_bounds(&g).ok();
    Ok(RootReport::from_roots(roots, annulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn root_examples() {
        let r = find_roots(&Poly::from_real(&[1.0, 1.0]), DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] + 1.0).norm() < 1e-15);

        let r = sorted(find_roots(&Poly::from_real(&[2.0, 2.0, 1.0]), DEFAULT_ROOT_TOL).unwrap());
        assert!((r[0] - c(-1.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - c(-1.0, 1.0)).norm() < 1e-14);

        assert!(find_roots(&Poly::one(), DEFAULT_ROOT_TOL).is_err());
        assert!(find_roots(&Poly::zero(), DEFAULT_ROOT_TOL).is_err());
    }

    #[test]
    fn roots_at_origin_are_exact() {
        let r = sorted(find_roots(&Poly::from_real(&[0.0, 0.0, -4.0, 1.0]), 1e-14).unwrap());
        assert_eq!(&r[..2], &[ZERO, ZERO]);
        assert!((r[2] - 4.0).norm() < 1e-14);
        let r = find_roots(&Poly::monomial(3, ONE), 1e-14).unwrap();
        assert_eq!(r, vec![ZERO; 3]);
    }

    #[test]
    fn simplicity_examples() {
        assert!(check_simple(&[c(-1.0, 1.0), c(-1.0, -1.0)], 1e-7));
        assert!(!check_simple(&[c(1.0, 0.0), c(1.0, 0.0)], 1e-7));
        assert!(check_simple(&[c(3.0, 0.0)], 1e-7));
    }

    #[test]
    fn annulus_examples() {
        assert_eq!(
            enestrom_kakeya_bounds(&Poly::from_real(&[1.0, 1.0, 0.5])).unwrap(),
            (1.0, 2.0)
        );
        assert_eq!(
            enestrom_kakeya_bounds(&Poly::from_real(&[1.0, 1.0, 1.0])).unwrap(),
            (1.0, 1.0)
        );
        assert_eq!(
            enestrom_kakeya_bounds(&Poly::from_real(&[2.0, 1.0])).unwrap(),
            (2.0, 2.0)
        );
        assert!(enestrom_kakeya_bounds(&Poly::from_real(&[1.0, -1.0])).is_err());
        let roots = find_roots(&Poly::from_real(&[1.0, 1.0, 1.0]), 1e-14).unwrap();
        assert!(roots.iter().all(|r| (r.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn location_examples() {
        let exp = HypParams::exponential();
        let rep = location_report(&exp, 2).unwrap();
        assert!((rep.min_modulus - 2f64.sqrt()).abs() < 1e-14);
        assert!(rep.simple && !rep.positive_real_root_found && rep.outside_open_disk());
        assert!(rep.boundary_roots.is_empty());

        let rep = location_report(&exp, 1).unwrap();
        assert!((rep.min_modulus - 1.0).abs() < 1e-12);
        assert_eq!(rep.boundary_roots.len(), 1);

        let rep = location_report(&exp, 0).unwrap();
        assert!(rep.roots.is_empty());
    }

    #[test]
    fn location_refuses_bad_parameters() {
        let bad = [
            HypParams::from_real(&[1.0], &[]).unwrap(),
            HypParams::from_real(&[2.0], &[1.0]).unwrap(),
            HypParams::from_real(&[], &[0.5]).unwrap(),
            HypParams::from_real(&[1.0], &[2.0, 0.9]).unwrap(),
            HypParams::new(vec![], vec![c(2.0, 1.0)]).unwrap(),
        ];
        for p in &bad {
            assert!(
                matches!(location_report(p, 4), Err(Error::Precondition(_))),
                "{p:?}"
            );
        }
    }

    #[test]
    fn reconstruction_examples() {
        let f = Poly::from_real(&[2.0, 2.0, 1.0]);
        let roots = find_roots(&f, 1e-14).unwrap();
        assert!(reconstruction_error(&f, &roots) < 1e-14);
        assert!(reconstruction_error(&f, &[c(-1.0, 1.0), c(-1.0, -1.1)]) > 1e-3);
    }
}
