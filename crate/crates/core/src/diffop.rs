//! Linear differential operators `Σ_l c_l(z) d^l/dz^l` with polynomial
//! coefficients, the Euler operator `θ = z d/dz`, and the operator `R` that
//! maps `g_n` to a multiple of `z^n`.

use num_complex::Complex64;

use crate::error::Result;
use crate::hyp::{gn_direct, monic_factor, HypParams};
use crate::poly::{Poly, ONE};

/// Operator stored in expanded form: `coeffs[l]` multiplies the `l`-th derivative.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinDiffOp {
    coeffs: Vec<Poly>,
}

impl LinDiffOp {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        LinDiffOp { coeffs }
    }

    pub fn zero() -> Self {
        LinDiffOp::default()
    }

    /// Multiplication by a polynomial (order zero).
    pub fn multiplication(c: Poly) -> Self {
        LinDiffOp::new(vec![c])
    }

    pub fn identity() -> Self {
        LinDiffOp::multiplication(Poly::one())
    }

    pub fn derivative() -> Self {
        LinDiffOp::new(vec![Poly::zero(), Poly::one()])
    }

    /// `θ = z d/dz`.
    pub fn theta() -> Self {
        LinDiffOp::new(vec![Poly::zero(), Poly::z()])
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of the `l`-th derivative; zero above the order.
    pub fn coeff(&self, l: usize) -> Poly {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    /// Highest derivative with a nonzero coefficient, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &LinDiffOp) -> LinDiffOp {
        let len = self.coeffs.len().max(other.coeffs.len());
        LinDiffOp::new((0..len).map(|l| &self.coeff(l) + &other.coeff(l)).collect())
    }

    pub fn sub(&self, other: &LinDiffOp) -> LinDiffOp {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: Complex64) -> LinDiffOp {
        LinDiffOp::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// `self + s·id`.
    pub fn plus_scalar(&self, s: Complex64) -> LinDiffOp {
        self.add(&LinDiffOp::multiplication(Poly::constant(s)))
    }

    /// `self ∘ other`, expanded with the Leibniz rule
    /// `D^l (b f^(m)) = Σ_i C(l,i) b^(i) f^(l-i+m)`.
    pub fn compose(&self, other: &LinDiffOp) -> LinDiffOp {
        let (Some(oa), Some(ob)) = (self.order(), other.order()) else {
            return LinDiffOp::zero();
        };
        let mut out = vec![Poly::zero(); oa + ob + 1];
        for (l, a_l) in self.coeffs.iter().enumerate() {
            if a_l.is_zero() {
                continue;
            }
            for (m, b_m) in other.coeffs.iter().enumerate() {
                let mut deriv = b_m.clone();
                let mut binom = 1.0;
                for i in 0..=l {
                    if deriv.is_zero() {
                        break;
                    }
                    let term = a_l.mul(&deriv).scale(Complex64::new(binom, 0.0));
                    out[l - i + m] = &out[l - i + m] + &term;
                    binom = binom * (l - i) as f64 / (i + 1) as f64;
                    deriv = deriv.derivative();
                }
            }
        }
        LinDiffOp::new(out)
    }

    /// `Σ_l c_l f^(l)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut deriv = f.clone();
        for c in &self.coeffs {
            if deriv.is_zero() {
                break;
            }
            acc = &acc + &c.mul(&deriv);
            deriv = deriv.derivative();
        }
        acc
    }

    /// Coefficientwise bound on the terms summed by [`LinDiffOp::apply`]:
    /// the same expansion carried out on coefficient moduli.
    pub fn apply_abs(&self, f: &Poly) -> Poly {
        LinDiffOp::new(self.coeffs.iter().map(Poly::abs_coeffs).collect()).apply(&f.abs_coeffs())
    }
}

/// `R = (d/dz) Π_j (θ + b_j - 1) - Π_j (a_j + θ)`, empty products being the
/// identity. Factors are composed left to right in ascending `j`.
pub fn build_r(params: &HypParams) -> LinDiffOp {
    let lower = params.b().iter().fold(LinDiffOp::derivative(), |acc, &b| {
        acc.compose(&LinDiffOp::theta().plus_scalar(b - ONE))
    });
    let upper = params.a().iter().fold(LinDiffOp::identity(), |acc, &a| {
        acc.compose(&LinDiffOp::theta().plus_scalar(a))
    });
    lower.sub(&upper)
}

/// `κ_n = n! (b_1)_n...(b_q)_n / ((a_1)_{n+1}...(a_p)_{n+1})`, normalized so
/// that `-κ_n R g_n = z^n`.
pub fn kappa(params: &HypParams, n: usize) -> Result<Complex64> {
    let tail = params.a().iter().fold(ONE, |acc, &a| acc * (a + n as f64));
    Ok(monic_factor(params, n)? / tail)
}

/// `-κ_n R g_n`, which is `z^n` up to rounding.
pub fn r_image(params: &HypParams, n: usize) -> Result<Poly> {
    let g = gn_direct(params, n)?;
    Ok(build_r(params).apply(&g).scale(-kappa(params, n)?))
}

/// Residual of the differential equation `θ R g_n - n R g_n = 0`.
pub fn verify_ode(params: &HypParams, n: usize) -> Result<Poly> {
    let g = gn_direct(params, n)?;
    let r = build_r(params);
    let theta_r = LinDiffOp::theta().compose(&r);
    Ok(&theta_r.apply(&g) - &r.apply(&g).scale(Complex64::new(n as f64, 0.0)))
}

/// Worst coefficientwise ratio `|residual_k| / scale_k`, treating `0/0` as 0
/// and `x/0` as infinite.
pub fn scaled_residual(residual: &Poly, scale: &Poly) -> f64 {
    let len = residual.coeffs().len().max(scale.coeffs().len());
    (0..len)
        .map(|k| {
            let r = residual.coeff(k).norm();
            let s = scale.coeff(k).norm();
            match (r == 0.0, s == 0.0) {
                (true, _) => 0.0,
                (false, true) => f64::INFINITY,
                (false, false) => r / s,
            }
        })
        .fold(0.0, f64::max)
}

/// Measured defect of `-κ_n R g_n = z^n`: every coefficient of
/// `-κ_n R g_n - z^n` divided by the magnitude of the terms that produced it.
pub fn r_image_defect(params: &HypParams, n: usize) -> Result<f64> {
    let g = gn_direct(params, n)?;
    let r = build_r(params);
    let k = kappa(params, n)?;
    let image = r.apply(&g).scale(-k);
    let defect = &image - &Poly::monomial(n, ONE);
    let scale = r.apply_abs(&g).scale(Complex64::new(k.norm(), 0.0));
    Ok(scaled_residual(&defect, &scale))
}

/// `Σ_{k≠n} |[z^k](-κ_n R g_n)|`, unscaled.
pub fn r_image_off_monomial_mass(params: &HypParams, n: usize) -> Result<f64> {
    let image = r_image(params, n)?;
    Ok(image
        .coeffs()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != n)
        .map(|(_, c)| c.norm())
        .sum())
}

/// Measured ODE residual: each coefficient of `θRg_n - nRg_n` divided by
/// `(n+1)` times the magnitude of the terms entering `Rg_n`.
pub fn ode_defect(params: &HypParams, n: usize) -> Result<f64> {
    let residual = verify_ode(params, n)?;
    let g = gn_direct(params, n)?;
    let scale = build_r(params)
        .apply_abs(&g)
        .scale(Complex64::new((n + 1) as f64, 0.0));
    Ok(scaled_residual(&residual, &scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn theta_examples() {
        let t = LinDiffOp::theta();
        assert!(t.apply(&Poly::constant(r(3.0))).is_zero());
        assert_eq!(t.apply(&Poly::monomial(5, ONE)), Poly::monomial(5, r(5.0)));
        assert_eq!(
            t.apply(&Poly::from_real(&[1.0, 1.0, 1.0])),
            Poly::from_real(&[0.0, 1.0, 2.0])
        );
    }

    #[test]
    fn compose_examples() {
        let op = LinDiffOp::new(vec![Poly::from_real(&[0.5, 2.0]), Poly::one(), Poly::z()]);
        assert_eq!(op.compose(&LinDiffOp::identity()), op);
        assert_eq!(LinDiffOp::identity().compose(&op), op);
        let tt = LinDiffOp::theta().compose(&LinDiffOp::theta());
        assert_eq!(tt.apply(&Poly::monomial(2, ONE)), Poly::monomial(2, r(4.0)));

        let b = Complex64::new(1.75, -0.5);
        let lhs = LinDiffOp::derivative().compose(&LinDiffOp::theta().plus_scalar(b - ONE));
        let rhs = LinDiffOp::new(vec![Poly::zero(), Poly::constant(b), Poly::z()]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_examples() {
        assert!(LinDiffOp::zero()
            .apply(&Poly::from_real(&[1.0, 2.0]))
            .is_zero());
        let op = LinDiffOp::derivative().plus_scalar(-ONE);
        assert_eq!(
            op.apply(&Poly::from_real(&[1.0, 1.0])),
            Poly::from_real(&[0.0, -1.0])
        );
        assert_eq!(
            LinDiffOp::theta().apply(&Poly::monomial(3, ONE)),
            Poly::monomial(3, r(3.0))
        );
    }

    #[test]
    fn r_examples() {
        let r0 = build_r(&HypParams::exponential());
        assert_eq!(r0.coeffs(), &[Poly::constant(-ONE), Poly::one()]);
        assert_eq!(r0.order(), Some(1));

        let b1 = 2.5;
        let r1 = build_r(&HypParams::from_real(&[], &[b1]).unwrap());
        assert_eq!(
            r1.coeffs(),
            &[Poly::constant(-ONE), Poly::constant(r(b1)), Poly::z()]
        );

        let a1 = 0.75;
        let r2 = build_r(&HypParams::from_real(&[a1], &[]).unwrap());
        assert_eq!(
            r2.coeffs(),
            &[Poly::constant(r(-a1)), Poly::from_real(&[1.0, -1.0])]
        );
    }

    #[test]
    fn kappa_examples() {
        assert!((kappa(&HypParams::exponential(), 2).unwrap() - r(2.0)).norm() < 1e-15);
        let p = HypParams::from_real(&[], &[1.5, -0.25]).unwrap();
        assert_eq!(kappa(&p, 0).unwrap(), ONE);
        let p = HypParams::from_real(&[2.0], &[]).unwrap();
        assert_eq!(kappa(&p, 0).unwrap(), r(0.5));
    }

    #[test]
    fn r_image_examples() {
        let exp = HypParams::exponential();
        assert_eq!(r_image(&exp, 0).unwrap(), Poly::one());
        assert_eq!(r_image(&exp, 2).unwrap(), Poly::monomial(2, ONE));
        let geo = HypParams::from_real(&[1.0], &[]).unwrap();
        assert_eq!(r_image(&geo, 1).unwrap(), Poly::monomial(1, ONE));
    }

    #[test]
    fn ode_examples() {
        let p = HypParams::from_real(&[0.3, 4.0], &[1.25]).unwrap();
        assert!(verify_ode(&p, 0).unwrap().is_zero());
        assert!(verify_ode(&HypParams::exponential(), 2).unwrap().is_zero());
        let b1 = HypParams::from_real(&[], &[1.0]).unwrap();
        assert!(verify_ode(&b1, 1).unwrap().is_zero());
    }

    #[test]
    fn r_order_is_rho() {
        for p in 0..=4 {
            for q in 0..=4 {
                let a: Vec<f64> = (0..p).map(|j| 0.5 + j as f64).collect();
                let b: Vec<f64> = (0..q).map(|j| 1.25 + j as f64).collect();
                let params = HypParams::from_real(&a, &b).unwrap();
                assert_eq!(build_r(&params).order(), Some(p.max(q + 1)), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn scaled_residual_handles_zeros() {
        let zero = Poly::zero();
        assert_eq!(scaled_residual(&zero, &zero), 0.0);
        assert!(scaled_residual(&Poly::one(), &zero).is_infinite());
        assert_eq!(scaled_residual(&Poly::one(), &Poly::constant(r(4.0))), 0.25);
    }
}
