//! Random parameter draws for the randomized verification suites.
//!
//! Every function takes the generator explicitly; callers seed it to make a
//! suite reproducible.

use num_complex::Complex64;
use rand::{Rng, RngExt};

use crate::hyp::HypParams;
use crate::pencil::JacobiPencil;

/// Minimum distance a random parameter keeps from `{0, -1, -2, ...}`.
pub const POLE_MARGIN: f64 = 1e-3;

/// Complex value with real and imaginary parts uniform in `[-5, 5]`,
/// redrawn while it lies within [`POLE_MARGIN`] of a non-positive integer.
pub fn random_parameter<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let v = Complex64::new(rng.random_range(-5.0..=5.0), rng.random_range(-5.0..=5.0));
        let m = (-v.re).round().max(0.0);
        if (v + m).norm() >= POLE_MARGIN {
            return v;
        }
    }
}

/// Parameters for fixed `(p, q)` drawn by [`random_parameter`].
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, p: usize, q: usize) -> HypParams {
    let a = (0..p).map(|_| random_parameter(rng)).collect();
    let b = (0..q).map(|_| random_parameter(rng)).collect();
    HypParams::new(a, b).expect("draws keep their distance from the excluded set")
}

/// `(p, q)` uniform in `0..=max_p` × `0..=max_q`, then [`random_params`].
pub fn random_params_upto<R: Rng + ?Sized>(rng: &mut R, max_p: usize, max_q: usize) -> HypParams {
    let p = rng.random_range(0..=max_p);
    let q = rng.random_range(0..=max_q);
    random_params(rng, p, q)
}

/// Like [`random_params_upto`] but with `p ≤ q`.
pub fn random_params_entire<R: Rng + ?Sized>(rng: &mut R, max_q: usize) -> HypParams {
    let q = rng.random_range(0..=max_q);
    let p = rng.random_range(0..=q);
    random_params(rng, p, q)
}

/// Real parameters with `p ≤ q ≤ max_q`, `0 < a_j ≤ b_j` for `j ≤ p` and
/// `b_k ≥ 1` for `k > p`; the regime in which the zeros of `g_n` avoid the
/// closed unit disk's interior and the ray `(1, ∞)`.
pub fn random_zero_free_disk_params<R: Rng + ?Sized>(rng: &mut R, max_q: usize) -> HypParams {
    let q = rng.random_range(0..=max_q);
    let p = rng.random_range(0..=q);
    let mut a = Vec::with_capacity(p);
    let mut b = Vec::with_capacity(q);
    for _ in 0..p {
        let aj: f64 = rng.random_range(0.05..=5.0);
        a.push(aj);
        b.push(aj * rng.random_range(1.0..=3.0));
    }
    for _ in p..q {
        b.push(rng.random_range(1.0..=6.0));
    }
    HypParams::from_real(&a, &b).expect("positive parameters are valid")
}

/// Pencil of size `n` (enough for `p_0..=p_n`) with diagonal and first
/// off-diagonal entries in `[-2, 2]`, and `a_k`, `γ_k`, `α` in `(0.1, 2]`.
pub fn random_pencil<R: Rng + ?Sized>(rng: &mut R, n: usize) -> JacobiPencil {
    let mut unif = |lo: f64, hi: f64, len: usize| -> Vec<f64> {
        (0..len).map(|_| rng.random_range(lo..=hi)).collect()
    };
    let j3_diag = unif(-2.0, 2.0, n);
    let j3_off = unif(0.1 + f64::EPSILON, 2.0, n);
    let j5_diag = unif(-2.0, 2.0, n);
    let j5_off1 = unif(-2.0, 2.0, n);
    let j5_off2 = unif(0.1 + f64::EPSILON, 2.0, n);
    let alpha = unif(0.1 + f64::EPSILON, 2.0, 1)[0];
    let beta = unif(-2.0, 2.0, 1)[0];
    JacobiPencil::new(j3_diag, j3_off, j5_diag, j5_off1, j5_off2, alpha, beta)
        .expect("sampled entries satisfy the pencil constraints")
}

/// Positive coefficients in `(0, 3]`.
pub fn random_positive_coeffs<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len)
        .map(|_| loop {
            let x: f64 = rng.random_range(0.0..=3.0);
            if x > 0.0 {
                break x;
            }
        })
        .collect()
}
