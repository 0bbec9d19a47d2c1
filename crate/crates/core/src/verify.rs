//! Measured checks of every identity satisfied by `g_n`, each against a
//! pinned tolerance. The command-line `verify` subcommand and the acceptance
//! suite both run these.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffop::{ode_defect, r_image_defect, r_image_off_monomial_mass, scaled_residual};
use crate::error::{Error, Result};
use crate::hyp::{
    gn_by_recurrence, gn_direct, gn_monic, gn_monic_by_recurrence, gn_monic_recurrence_scale,
    HypParams,
};
use crate::pencil::{pencil_polynomials, pencil_residual, pencil_residual_scale, JacobiPencil};
use crate::pfq::{
    circle_scale, integral_rep_negative_axis, integral_rep_negative_axis_quadrature,
    CircleRepresentation, DEFAULT_CIRCLE_NODES,
};
use crate::poly::{max_coeff_rel_diff, Poly, ONE, ZERO};
use crate::ri::{ri_generate, tfraction_from_hyp};
use crate::roots::{location_report, reconstruction_error, zero_localization_conditions};
use crate::sample;
use crate::sobolev::{
    auto_node_count, build_sobolev_form, sobolev_gram, sobolev_inner, sobolev_inner_via_matrix,
    QuadratureRule, SobolevForm,
};

/// Tolerances of the verification suites.
pub mod tol {
    /// `g_n` and `G_n`: recurrence against closed form.
    pub const RECURRENCE: f64 = 1e-10;
    /// `θRg_n - nRg_n`, per coefficient, against `(n+1)` times the terms of `Rg_n`.
    pub const ODE: f64 = 1e-9;
    /// `-κ_n Rg_n - z^n`, per coefficient, against the terms that produced it.
    pub const R_IMAGE: f64 = 1e-9;
    /// Off-diagonal Gram entries against the largest diagonal entry.
    pub const GRAM_OFFDIAG: f64 = 1e-10;
    /// Gram diagonal against `|κ_n|^{-2}`, relative.
    pub const GRAM_DIAG: f64 = 1e-9;
    pub const GRAM_HERMITIAN: f64 = 1e-12;
    /// Rank-one evaluation against the materialized matrix `M`.
    pub const MATRIX_ORACLE: f64 = 1e-12;
    /// Equispaced rule on `z^k conj(z^m)`.
    pub const QUADRATURE_EXACT: f64 = 1e-14;
    /// Circle representation, absolute.
    pub const CIRCLE_REP: f64 = 1e-8;
    /// Termwise negative-axis representation, relative to `|g_n(x)|`.
    pub const AXIS_REP: f64 = 1e-10;
    /// Gauss–Legendre cross-check, against `max(1, |g_n(x)|)`.
    pub const AXIS_QUADRATURE: f64 = 1e-6;
    /// Slack below one for root moduli.
    pub const ROOT_MODULUS_SLACK: f64 = 1e-9;
    /// Pairwise root distance against the largest root modulus.
    pub const ROOT_SEPARATION: f64 = 1e-7;
    pub const ROOT_RECONSTRUCTION: f64 = 1e-8;
    /// Containment slack of the Eneström–Kakeya annulus.
    pub const ANNULUS_SLACK: f64 = 1e-9;
    /// `g_1 = 1 + z` for `p = q = 0`: root modulus against one.
    pub const BOUNDARY_ROOT: f64 = 1e-12;
    /// R_I generation from the T-fraction data against the monic recurrence.
    pub const TFRACTION: f64 = 1e-12;
    /// Pencil relation residual against the magnitude of its terms.
    pub const PENCIL: f64 = 1e-10;
    /// Chebyshev decompositions on the circle.
    pub const KERNEL: f64 = 1e-10;
    /// `sup |g_20 - e^z|` on the circle.
    pub const EXP_CONVERGENCE: f64 = 1e-15;
    /// Geometric tail `|g_10(0.5) - 2|` against `2 · 0.5^11`.
    pub const GEOMETRIC_TAIL: f64 = 1e-12;
}

/// Names of every measurement the suites report.
pub const MEASUREMENT_NAMES: [&str; 26] = [
    "g_recurrence_vs_direct",
    "G_recurrence_vs_monic",
    "g_at_zero_minus_one",
    "consecutive_difference_vs_monomial",
    "ode_scaled_residual",
    "r_image_scaled_defect",
    "gram_offdiag_ratio",
    "gram_diag_rel_error",
    "gram_hermitian_defect",
    "matrix_oracle_defect",
    "quadrature_monomial_defect",
    "circle_rep_abs_error",
    "axis_rep_termwise_rel_error",
    "axis_rep_quadrature_error",
    "min_root_modulus",
    "min_relative_root_separation",
    "roots_on_ray_1_inf",
    "root_reconstruction_error",
    "annulus_violation",
    "ri_vs_monic_recurrence",
    "ri_vs_monic_closed_form",
    "leading_coefficient_minus_one",
    "validity_violations",
    "pencil_scaled_residual",
    "worked_example_defect",
    "degree_or_sign_defects",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Recurrence,
    Ode,
    Sobolev,
    CircleRep,
    AxisRep,
    Roots,
    RiFrac,
    Pencil,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Recurrence,
        CheckKind::Ode,
        CheckKind::Sobolev,
        CheckKind::CircleRep,
        CheckKind::AxisRep,
        CheckKind::Roots,
        CheckKind::RiFrac,
        CheckKind::Pencil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Recurrence => "recurrence",
            CheckKind::Ode => "ode",
            CheckKind::Sobolev => "sobolev",
            CheckKind::CircleRep => "circle-rep",
            CheckKind::AxisRep => "axis-rep",
            CheckKind::Roots => "roots",
            CheckKind::RiFrac => "rifrac",
            CheckKind::Pencil => "pencil",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        CheckKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Degree range the randomized suite uses for this check.
    pub fn random_regime_degree(self) -> usize {
        match self {
            CheckKind::Recurrence | CheckKind::Ode | CheckKind::Roots | CheckKind::RiFrac => 25,
            CheckKind::Sobolev => 15,
            CheckKind::CircleRep => 10,
            CheckKind::AxisRep => 20,
            CheckKind::Pencil => 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// One measured quantity and the bound it must respect.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Measurement {
    pub fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Measurement {
            name,
            value,
            threshold,
            bound: Bound::AtMost,
        }
    }

    pub fn at_least(name: &'static str, value: f64, threshold: f64) -> Self {
        Measurement {
            name,
            value,
            threshold,
            bound: Bound::AtLeast,
        }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.threshold,
            Bound::AtLeast => self.value >= self.threshold,
        }
    }

    /// Keeps the worse of two measurements of the same quantity.
    fn absorb(&mut self, other: &Measurement) {
        let worse = match self.bound {
            Bound::AtMost => other.value > self.value || other.value.is_nan(),
            Bound::AtLeast => other.value < self.value || other.value.is_nan(),
        };
        if worse {
            self.value = other.value;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub measurements: Vec<Measurement>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    fn new(check: CheckKind) -> Self {
        CheckOutcome {
            check,
            measurements: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.measurements.iter().all(Measurement::passed)
    }
}

/// Whether the preconditions of `kind` hold for `params`.
pub fn check_applicable(kind: CheckKind, params: &HypParams) -> Result<()> {
    match kind {
        CheckKind::CircleRep if params.p() > params.q() => Err(Error::Precondition(format!(
            "the circle representation needs p <= q, got p = {}, q = {}",
            params.p(),
            params.q()
        ))),
        CheckKind::Roots => zero_localization_conditions(params),
        _ => Ok(()),
    }
}

/// Runs one check on fixed parameters with degrees `0..=n_max`. Checks that
/// use random samples (angles, pencils) draw them from `seed`.
pub fn run_check(
    kind: CheckKind,
    params: &HypParams,
    n_max: usize,
    seed: u64,
) -> Result<CheckOutcome> {
    check_applicable(kind, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        CheckKind::Recurrence => check_recurrence(params, n_max),
        CheckKind::Ode => check_ode(params, n_max),
        CheckKind::Sobolev => check_sobolev(params, n_max),
        CheckKind::CircleRep => {
            let angles: Vec<f64> = (0..16).map(|_| rng.random_range(0.0..TAU)).collect();
            check_circle_rep(params, n_max, &angles)
        }
        CheckKind::AxisRep => check_axis_rep(params, n_max),
        CheckKind::Roots => check_roots(params, n_max),
        CheckKind::RiFrac => check_rifrac(params, n_max),
        CheckKind::Pencil => check_pencils(&mut rng, 20, n_max.clamp(2, 12)),
    }
}

/// Runs one check over `draws` random parameter sets from the regime the
/// check is stated for, keeping the worst value of every measurement.
pub fn run_randomized(kind: CheckKind, draws: usize, seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_max = kind.random_regime_degree();
    if kind == CheckKind::Pencil {
        return check_pencils(&mut rng, draws, n_max);
    }
    let mut merged: Option<CheckOutcome> = None;
    let mut failing = 0;
    for _ in 0..draws {
        let params = match kind {
            CheckKind::CircleRep => sample::random_params_entire(&mut rng, 3),
            CheckKind::Roots => sample::random_zero_free_disk_params(&mut rng, 3),
            _ => sample::random_params_upto(&mut rng, 3, 3),
        };
        let angles: Vec<f64> = (0..16).map(|_| rng.random_range(0.0..TAU)).collect();
        let outcome = match kind {
            CheckKind::CircleRep => check_circle_rep(&params, n_max, &angles)?,
            _ => run_check(kind, &params, n_max, 0)?,
        };
        if !outcome.passed() {
            failing += 1;
        }
        match merged.as_mut() {
            None => merged = Some(outcome),
            Some(acc) => {
                for (m, o) in acc.measurements.iter_mut().zip(&outcome.measurements) {
                    m.absorb(o);
                }
            }
        }
    }
    let mut out = merged.unwrap_or_else(|| CheckOutcome::new(kind));
    out.notes = vec![format!("{draws} draws, {failing} failing, n <= {n_max}")];
    Ok(out)
}

fn check_recurrence(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::Recurrence);
    let rec = gn_by_recurrence(params, n_max)?;
    let monic_rec = gn_monic_by_recurrence(params, n_max)?;
    let scales = gn_monic_recurrence_scale(params, n_max)?;
    let (mut g_err, mut big_g_err, mut at_zero, mut diff_err) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 0..=n_max {
        let g = gn_direct(params, n)?;
        g_err = g_err.max(max_coeff_rel_diff(&rec[n], &g));
        let big_g = gn_monic(params, n)?;
        big_g_err = big_g_err.max(scaled_residual(&(&monic_rec[n] - &big_g), &scales[n]));
        at_zero = at_zero.max((g.eval(ZERO) - ONE).norm());
        if n >= 1 {
            let prev = gn_direct(params, n - 1)?;
            let step = Poly::monomial(n, g.coeff(n));
            diff_err = diff_err.max(max_coeff_rel_diff(&(&g - &prev), &step));
        }
    }
    out.measurements = vec![
        Measurement::at_most("g_recurrence_vs_direct", g_err, tol::RECURRENCE),
        Measurement::at_most("G_recurrence_vs_monic", big_g_err, tol::RECURRENCE),
        Measurement::at_most("g_at_zero_minus_one", at_zero, 0.0),
        Measurement::at_most("consecutive_difference_vs_monomial", diff_err, 0.0),
    ];
    Ok(out)
}

fn check_ode(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::Ode);
    let (mut ode, mut image, mut mass) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=n_max {
        ode = ode.max(ode_defect(params, n)?);
        image = image.max(r_image_defect(params, n)?);
        mass = mass.max(r_image_off_monomial_mass(params, n)?);
    }
    out.measurements = vec![
        Measurement::at_most("ode_scaled_residual", ode, tol::ODE),
        Measurement::at_most("r_image_scaled_defect", image, tol::R_IMAGE),
    ];
    out.notes.push(format!(
        "unscaled off-monomial mass of -kappa_n R g_n: {mass:.16e}"
    ));
    Ok(out)
}

/// Diagnostics of the Gram matrix of `g_0..g_{n_max}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramDiagnostics {
    /// `max |G_nm| / max_n G_nn` over `n ≠ m`.
    pub offdiag_ratio: f64,
    /// `max |G_nn - |κ_n|^{-2}| / |κ_n|^{-2}`.
    pub diag_rel_error: f64,
    /// `max |G_nm - conj(G_mn)| / max_n G_nn`.
    pub hermitian_defect: f64,
}

pub fn gram_diagnostics(params: &HypParams, n_max: usize) -> Result<GramDiagnostics> {
    let gram = sobolev_gram(params, n_max)?;
    let max_diag = (0..=n_max).map(|n| gram[n][n].norm()).fold(0.0, f64::max);
    let mut d = GramDiagnostics {
        offdiag_ratio: 0.0,
        diag_rel_error: 0.0,
        hermitian_defect: 0.0,
    };
    for n in 0..=n_max {
        for m in 0..=n_max {
            d.hermitian_defect = d
                .hermitian_defect
                .max((gram[n][m] - gram[m][n].conj()).norm() / max_diag);
            if n == m {
                let want = 1.0 / crate::diffop::kappa(params, n)?.norm_sqr();
                d.diag_rel_error = d.diag_rel_error.max((gram[n][n] - want).norm() / want);
            } else {
                d.offdiag_ratio = d.offdiag_ratio.max(gram[n][m].norm() / max_diag);
            }
        }
    }
    Ok(d)
}

/// Node mean of `(Σ|c_l||f^(l)|)(Σ|c_l||h^(l)|)`, the magnitude of the terms
/// inside the Sobolev integrand.
fn sobolev_term_scale(form: &SobolevForm, f: &Poly, h: &Poly, n: usize) -> Result<f64> {
    let rule = QuadratureRule::new(n)?;
    let stack = |p: &Poly| -> Vec<Poly> { (0..=form.rho()).map(|l| p.nth_derivative(l)).collect() };
    let (fs, hs) = (stack(f), stack(h));
    let abs_apply = |z: Complex64, s: &[Poly]| -> f64 {
        form.coeffs()
            .iter()
            .zip(s)
            .map(|(c, d)| c.eval(z).norm() * d.eval(z).norm())
            .sum()
    };
    Ok(rule
        .integrate(|z| Complex64::new(abs_apply(z, &fs) * abs_apply(z, &hs), 0.0))
        .re)
}

/// Largest scaled disagreement between the rank-one evaluation of the form
/// and the materialized-matrix evaluation, over pairs from `g_0..g_{n_max}`.
pub fn matrix_oracle_defect(params: &HypParams, n_max: usize) -> Result<f64> {
    let form = build_sobolev_form(params);
    let nodes = auto_node_count(n_max, form.rho());
    let gs = (0..=n_max)
        .map(|n| gn_direct(params, n))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for f in &gs {
        for h in &gs {
            let a = sobolev_inner(&form, f, h, nodes)?;
            let b = sobolev_inner_via_matrix(&form, f, h, nodes)?;
            let scale = sobolev_term_scale(&form, f, h, nodes)?;
            if a != b {
                worst = worst.max((a - b).norm() / scale);
            }
        }
    }
    Ok(worst)
}

/// Largest deviation of the `N`-node rule from `δ_{km}` on `z^k conj(z^m)`
/// for `k + m < N`.
pub fn quadrature_exactness_defect(n: usize) -> Result<f64> {
    let rule = QuadratureRule::new(n)?;
    let mut worst = 0.0f64;
    for k in 0..n {
        for m in 0..n - k {
            let v = rule.integrate(|z| z.powu(k as u32) * z.powu(m as u32).conj());
            let want = if k == m { ONE } else { ZERO };
            worst = worst.max((v - want).norm());
        }
    }
    Ok(worst)
}

fn check_sobolev(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::Sobolev);
    let d = gram_diagnostics(params, n_max)?;
    let oracle = matrix_oracle_defect(params, n_max.min(6))?;
    let quad = quadrature_exactness_defect(auto_node_count(n_max, params.rho()))?;
    out.measurements = vec![
        Measurement::at_most("gram_offdiag_ratio", d.offdiag_ratio, tol::GRAM_OFFDIAG),
        Measurement::at_most("gram_diag_rel_error", d.diag_rel_error, tol::GRAM_DIAG),
        Measurement::at_most(
            "gram_hermitian_defect",
            d.hermitian_defect,
            tol::GRAM_HERMITIAN,
        ),
        Measurement::at_most("matrix_oracle_defect", oracle, tol::MATRIX_ORACLE),
        Measurement::at_most("quadrature_monomial_defect", quad, tol::QUADRATURE_EXACT),
    ];
    Ok(out)
}

/// Largest `|rep(n, τ) - g_n(e^{iτ})|` over `n ≤ n_max` and the given
/// angles. Rounding grows with `Σ|ξ_k|`, see [`circle_scale`].
pub fn circle_rep_defect(params: &HypParams, n_max: usize, angles: &[f64]) -> Result<f64> {
    let rep = CircleRepresentation::new(params, DEFAULT_CIRCLE_NODES)?;
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let g = gn_direct(params, n)?;
        for &tau in angles {
            let direct = g.eval(Complex64::from_polar(1.0, tau));
            worst = worst.max((rep.eval(n, tau) - direct).norm());
        }
    }
    Ok(worst)
}

fn check_circle_rep(params: &HypParams, n_max: usize, angles: &[f64]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::CircleRep);
    let d = circle_rep_defect(params, n_max, angles)?;
    out.measurements = vec![Measurement::at_most(
        "circle_rep_abs_error",
        d,
        tol::CIRCLE_REP,
    )];
    out.notes
        .push(format!("sum of |xi_k|: {:.16e}", circle_scale(params)?));
    Ok(out)
}

/// Sample points of the negative-axis representation.
pub const AXIS_POINTS: [f64; 3] = [-0.1, -1.0, -10.0];

/// `(termwise relative error, quadrature cross-check error)`, each the worst
/// over `n ≤ n_max` and [`AXIS_POINTS`].
pub fn axis_rep_defect(params: &HypParams, n_max: usize) -> Result<(f64, f64)> {
    let (mut exact, mut quad) = (0.0f64, 0.0f64);
    for n in 0..=n_max {
        let g = gn_direct(params, n)?;
        for x in AXIS_POINTS {
            let direct = g.eval(Complex64::new(x, 0.0));
            let termwise = integral_rep_negative_axis(params, n, x)?;
            let numeric = integral_rep_negative_axis_quadrature(params, n, x)?;
            let diff = (termwise - direct).norm();
            if diff != 0.0 {
                exact = exact.max(diff / direct.norm());
            }
            quad = quad.max((numeric - direct).norm() / direct.norm().max(1.0));
        }
    }
    Ok((exact, quad))
}

fn check_axis_rep(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::AxisRep);
    let (exact, quad) = axis_rep_defect(params, n_max)?;
    out.measurements = vec![
        Measurement::at_most("axis_rep_termwise_rel_error", exact, tol::AXIS_REP),
        Measurement::at_most("axis_rep_quadrature_error", quad, tol::AXIS_QUADRATURE),
    ];
    Ok(out)
}

fn check_roots(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::Roots);
    let mut min_modulus = f64::INFINITY;
    let mut min_separation = f64::INFINITY;
    let mut ray_roots = 0usize;
    let mut recon = 0.0f64;
    let mut annulus_violation = 0.0f64;
    for n in 2..=n_max {
        let report = location_report(params, n)?;
        let g = gn_direct(params, n)?;
        let max_mod = report.roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
        min_modulus = min_modulus.min(report.min_modulus);
        min_separation = min_separation.min(report.min_pair_distance / max_mod);
        ray_roots += report
            .roots
            .iter()
            .filter(|r| r.im.abs() < crate::roots::RAY_TOL && r.re > 1.0)
            .count();
        recon = recon.max(reconstruction_error(&g, &report.roots));
        if let Some((lo, hi)) = report.ek_annulus {
            for r in &report.roots {
                let m = r.norm();
                annulus_violation = annulus_violation.max(lo - m).max(m - hi);
            }
        }
    }
    if n_max >= 1 {
        let first = location_report(params, 1)?;
        if !first.boundary_roots.is_empty() {
            out.notes.push(format!(
                "g_1 has {} root(s) on the unit circle (boundary case, not counted)",
                first.boundary_roots.len()
            ));
        }
    }
    out.notes.push(format!(
        "min root modulus over 2 <= n <= {n_max}: {min_modulus:.17e}"
    ));
    out.measurements = vec![
        Measurement::at_least(
            "min_root_modulus",
            min_modulus,
            1.0 - tol::ROOT_MODULUS_SLACK,
        ),
        Measurement::at_least(
            "min_relative_root_separation",
            min_separation,
            tol::ROOT_SEPARATION,
        ),
        Measurement::at_most("roots_on_ray_1_inf", ray_roots as f64, 0.0),
        Measurement::at_most("root_reconstruction_error", recon, tol::ROOT_RECONSTRUCTION),
        Measurement::at_most("annulus_violation", annulus_violation, tol::ANNULUS_SLACK),
    ];
    Ok(out)
}

fn check_rifrac(params: &HypParams, n_max: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::RiFrac);
    let rec = tfraction_from_hyp(params, n_max)?;
    let (ps, report) = ri_generate(&rec, n_max)?;
    let monic_rec = gn_monic_by_recurrence(params, n_max)?;
    let scales = gn_monic_recurrence_scale(params, n_max)?;
    let (mut vs_rec, mut vs_closed, mut monic_defect) = (0.0f64, 0.0f64, 0.0f64);
    for n in 0..=n_max {
        vs_rec = vs_rec.max(max_coeff_rel_diff(&ps[n], &monic_rec[n]));
        vs_closed = vs_closed.max(scaled_residual(
            &(&ps[n] - &gn_monic(params, n)?),
            &scales[n],
        ));
        monic_defect = monic_defect.max((ps[n].leading().unwrap_or(ZERO) - ONE).norm());
    }
    out.measurements = vec![
        Measurement::at_most("ri_vs_monic_recurrence", vs_rec, tol::TFRACTION),
        Measurement::at_most("ri_vs_monic_closed_form", vs_closed, tol::TFRACTION),
        Measurement::at_most("leading_coefficient_minus_one", monic_defect, 0.0),
        Measurement::at_most("validity_violations", report.violations.len() as f64, 0.0),
    ];
    Ok(out)
}

/// Worst `pencil_residual / pencil_residual_scale` over `draws` random
/// pencils of size `n`, each at 20 random `λ ∈ [-3,3] + i[-1,1]`, with all
/// `n` rows checked.
pub fn pencil_defect<R: rand::Rng + ?Sized>(rng: &mut R, draws: usize, n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let pencil = sample::random_pencil(rng, n + 1);
        let ps = pencil_polynomials(&pencil, n)?;
        for _ in 0..20 {
            let lambda = Complex64::new(rng.random_range(-3.0..=3.0), rng.random_range(-1.0..=1.0));
            let rows = n - 1;
            let r = pencil_residual(&pencil, &ps, lambda, rows)?;
            if r != 0.0 {
                worst = worst.max(r / pencil_residual_scale(&pencil, &ps, lambda, rows)?);
            }
        }
    }
    Ok(worst)
}

/// The worked pencil (`J5` zero apart from `γ_n = 1`, `J3` with `a_k = 1`,
/// `b_k = 0`, `α = 1`, `β = 0`) whose `p_2` is `λ²`.
pub fn worked_pencil() -> JacobiPencil {
    JacobiPencil::new(
        vec![0.0; 4],
        vec![1.0; 4],
        vec![0.0; 4],
        vec![0.0; 4],
        vec![1.0; 4],
        1.0,
        0.0,
    )
    .expect("valid pencil")
}

fn check_pencils<R: rand::Rng + ?Sized>(
    rng: &mut R,
    draws: usize,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new(CheckKind::Pencil);
    let residual = pencil_defect(rng, draws, n)?;
    let worked = pencil_polynomials(&worked_pencil(), 2)?;
    let worked_defect = max_coeff_rel_diff(&worked[2], &Poly::monomial(2, ONE));
    let mut degree_defects = 0usize;
    for _ in 0..draws.min(20) {
        let ps = pencil_polynomials(&sample::random_pencil(rng, n + 1), n)?;
        for (k, p) in ps.iter().enumerate() {
            let lead = p.leading().unwrap_or(ZERO);
            if p.degree() != Some(k) || lead.re <= 0.0 || lead.im != 0.0 {
                degree_defects += 1;
            }
        }
    }
    out.measurements = vec![
        Measurement::at_most("pencil_scaled_residual", residual, tol::PENCIL),
        Measurement::at_most("worked_example_defect", worked_defect, 0.0),
        Measurement::at_most("degree_or_sign_defects", degree_defects as f64, 0.0),
    ];
    out.notes
        .push(format!("{draws} random pencils of size {n}"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(CheckKind::from_name(k.name()), Some(k));
        }
        assert_eq!(CheckKind::from_name("all"), None);
    }

    #[test]
    fn exponential_case_passes_everything() {
        let exp = HypParams::exponential();
        for k in CheckKind::ALL {
            let out = run_check(k, &exp, 10, 7).unwrap();
            assert!(out.passed(), "{k:?}: {:?}", out.measurements);
        }
    }

    #[test]
    fn measurement_names_are_listed() {
        let exp = HypParams::exponential();
        let mut seen: Vec<&str> = CheckKind::ALL
            .into_iter()
            .flat_map(|k| run_check(k, &exp, 3, 0).unwrap().measurements)
            .map(|m| m.name)
            .collect();
        seen.sort_unstable();
        let mut listed = MEASUREMENT_NAMES.to_vec();
        listed.sort_unstable();
        assert_eq!(seen, listed);
    }

    #[test]
    fn preconditions_gate_checks() {
        let p = HypParams::from_real(&[2.0], &[]).unwrap();
        assert!(matches!(
            run_check(CheckKind::CircleRep, &p, 4, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            run_check(CheckKind::Roots, &p, 4, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn nan_never_passes() {
        assert!(!Measurement::at_most("x", f64::NAN, 1.0).passed());
        assert!(!Measurement::at_least("x", f64::NAN, 1.0).passed());
        let mut m = Measurement::at_most("x", 1.0, 2.0);
        m.absorb(&Measurement::at_most("x", f64::NAN, 2.0));
        assert!(!m.passed());
    }
}
