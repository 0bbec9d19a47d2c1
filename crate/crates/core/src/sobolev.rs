//! Sobolev inner product on the unit circle built from the coefficients of
//! `R`, evaluated with the equispaced rule that integrates trigonometric
//! polynomials exactly.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::diffop::build_r;
use crate::error::{Error, Result};
use crate::hyp::{gn_direct, HypParams};
use crate::poly::{Poly, ZERO};

/// Equispaced rule on the unit circle: nodes `e^{2πij/N}`, weights `1/N`.
///
/// Exact for trigonometric polynomials of degree below `N`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    nodes: Vec<Complex64>,
}

impl QuadratureRule {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition(
                "quadrature needs at least one node".into(),
            ));
        }
        let nodes = (0..n)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64))
            .collect();
        Ok(QuadratureRule { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Mean of `f` over the nodes, summed in node order.
    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let sum = self.nodes.iter().fold(ZERO, |acc, &z| acc + f(z));
        sum / self.nodes.len() as f64
    }
}

/// The coefficients `c_0..c_ρ` of `R`. The matrix `M = c c^*` is rank one and
/// never stored; the form is `(Σ c_l f^(l)) · conj(Σ c_l h^(l))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SobolevForm {
    c: Vec<Poly>,
    rho: usize,
}

pub fn build_sobolev_form(params: &HypParams) -> SobolevForm {
    let r = build_r(params);
    let rho = params.rho();
    let c = (0..=rho).map(|l| r.coeff(l)).collect();
    SobolevForm { c, rho }
}

impl SobolevForm {
    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Smallest node count the inner product of `f` and `h` accepts.
    pub fn min_nodes(&self, f: &Poly, h: &Poly) -> usize {
        let deg = |p: &Poly| p.degree().unwrap_or(0);
        deg(f) + deg(h) + 2 * self.rho + 1
    }

    /// `c(z)` evaluated at a point.
    pub fn coeffs_at(&self, z: Complex64) -> Vec<Complex64> {
        self.c.iter().map(|c| c.eval(z)).collect()
    }

    /// `(Rf)(z) = Σ_l c_l(z) f^(l)(z)` from the derivative vector of `f`.
    fn contract(&self, z: Complex64, derivs: &[Complex64]) -> Complex64 {
        self.c
            .iter()
            .zip(derivs)
            .fold(ZERO, |acc, (c, d)| acc + c.eval(z) * d)
    }

    fn check_nodes(&self, f: &Poly, h: &Poly, n: usize) -> Result<()> {
        let need = self.min_nodes(f, h);
        if n < need {
            return Err(Error::Precondition(format!(
                "{n} quadrature nodes would alias the integrand; at least {need} are required"
            )));
        }
        Ok(())
    }
}

/// `(f, f', ..., f^(ρ))`.
fn derivative_stack(f: &Poly, rho: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(rho + 1);
    let mut d = f.clone();
    for _ in 0..=rho {
        let next = d.derivative();
        out.push(d);
        d = next;
    }
    out
}

fn eval_stack(stack: &[Poly], z: Complex64) -> Vec<Complex64> {
    stack.iter().map(|p| p.eval(z)).collect()
}

/// `∫_T (Rf) conj(Rh) dμ_0` by the `n`-node equispaced rule.
pub fn sobolev_inner(form: &SobolevForm, f: &Poly, h: &Poly, n: usize) -> Result<Complex64> {
    form.check_nodes(f, h, n)?;
    let rule = QuadratureRule::new(n)?;
    let fs = derivative_stack(f, form.rho);
    let hs = derivative_stack(h, form.rho);
    Ok(rule.integrate(|z| {
        form.contract(z, &eval_stack(&fs, z)) * form.contract(z, &eval_stack(&hs, z)).conj()
    }))
}

/// Same integral with `M(z)` materialized as a `(ρ+1)×(ρ+1)` matrix at each
/// node and contracted against both derivative vectors.
pub fn sobolev_inner_via_matrix(
    form: &SobolevForm,
    f: &Poly,
    h: &Poly,
    n: usize,
) -> Result<Complex64> {
    form.check_nodes(f, h, n)?;
    let rule = QuadratureRule::new(n)?;
    let fs = derivative_stack(f, form.rho);
    let hs = derivative_stack(h, form.rho);
    Ok(rule.integrate(|z| {
        let c = form.coeffs_at(z);
        let u = eval_stack(&fs, z);
        let v = eval_stack(&hs, z);
        let mut acc = ZERO;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let m_ij = c[i] * c[j].conj();
                acc += ui * m_ij * vj.conj();
            }
        }
        acc
    }))
}

/// `2 (n_max + ρ) + 8` rounded up to a power of two.
pub fn auto_node_count(n_max: usize, rho: usize) -> usize {
    (2 * (n_max + rho) + 8).next_power_of_two()
}

/// Gram matrix `⟨g_n, g_m⟩` for `0 ≤ n, m ≤ n_max`.
///
/// `Rg_n` is expanded once per `n`, then sampled at the nodes; the entries
/// are node-order sums and therefore deterministic.
pub fn sobolev_gram(params: &HypParams, n_max: usize) -> Result<Vec<Vec<Complex64>>> {
    let form = build_sobolev_form(params);
    let n_nodes = auto_node_count(n_max, form.rho);
    let rule = QuadratureRule::new(n_nodes)?;
    let r = build_r(params);
    let samples = (0..=n_max)
        .map(|n| {
            let rg = r.apply(&gn_direct(params, n)?);
            Ok(rule.nodes().iter().map(|&z| rg.eval(z)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut gram = vec![vec![ZERO; n_max + 1]; n_max + 1];
    for n in 0..=n_max {
        for m in 0..=n_max {
            let sum = samples[n]
                .iter()
                .zip(&samples[m])
                .fold(ZERO, |acc, (x, y)| acc + x * y.conj());
            gram[n][m] = sum / n_nodes as f64;
        }
    }
    Ok(gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ONE;

    #[test]
    fn form_examples() {
        let f = build_sobolev_form(&HypParams::exponential());
        assert_eq!(f.rho(), 1);
        assert_eq!(f.coeffs(), &[Poly::constant(-ONE), Poly::one()]);
        let f = build_sobolev_form(&HypParams::from_real(&[], &[1.5]).unwrap());
        assert_eq!(f.rho(), 2);
        assert_eq!(
            f.coeffs(),
            &[Poly::constant(-ONE), Poly::from_real(&[1.5]), Poly::z()]
        );
    }

    #[test]
    fn inner_examples() {
        let p = HypParams::exponential();
        let form = build_sobolev_form(&p);
        let g = |n| gn_direct(&p, n).unwrap();
        let v = sobolev_inner(&form, &g(0), &g(0), 8).unwrap();
        assert!((v - ONE).norm() < 1e-15);
        let v = sobolev_inner(&form, &g(1), &g(2), 8).unwrap();
        assert!(v.norm() < 1e-15);
        let v = sobolev_inner(&form, &g(2), &g(2), 8).unwrap();
        assert!((v - 0.25).norm() < 1e-15);
    }

    #[test]
    fn inner_refuses_aliasing() {
        let p = HypParams::exponential();
        let form = build_sobolev_form(&p);
        let g = gn_direct(&p, 3).unwrap();
        assert!(matches!(
            sobolev_inner(&form, &g, &g, 8),
            Err(Error::Precondition(_))
        ));
        assert!(sobolev_inner(&form, &g, &g, 9).is_ok());
    }

    #[test]
    fn gram_examples() {
        let gram = sobolev_gram(&HypParams::from_real(&[2.0], &[]).unwrap(), 0).unwrap();
        assert_eq!(gram.len(), 1);
        assert!((gram[0][0] - Complex64::new(4.0, 0.0)).norm() < 1e-14);

        let gram = sobolev_gram(&HypParams::exponential(), 2).unwrap();
        let expect = [1.0, 1.0, 0.25];
        for n in 0..3 {
            for m in 0..3 {
                let e = if n == m { expect[n] } else { 0.0 };
                assert!((gram[n][m] - e).norm() < 1e-15, "({n},{m})");
            }
        }
    }

    #[test]
    fn node_count() {
        assert_eq!(auto_node_count(0, 1), 16);
        assert_eq!(auto_node_count(15, 1), 64);
        assert_eq!(auto_node_count(15, 4), 64);
        assert_eq!(auto_node_count(30, 4), 128);
    }

    #[test]
    fn monomial_exactness() {
        let rule = QuadratureRule::new(32).unwrap();
        for k in 0..16 {
            for m in 0..16 {
                let v = rule.integrate(|z| z.powu(k) * z.powu(m).conj());
                if k == m {
                    assert!((v - ONE).norm() < 1e-14);
                } else {
                    assert!(v.norm() < 1e-14, "k={k} m={m}: {v}");
                }
            }
        }
    }
}
