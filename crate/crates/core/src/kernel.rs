//! Chebyshev polynomials and the modified-kernel decompositions of partial
//! sums with positive coefficients on the unit circle:
//! `Re f_n(e^{iτ}) = Σ_k d_k T_k(cos τ)` and
//! `Im f_{n+1}(e^{iτ}) = sin τ Σ_j d_{j+1} U_j(cos τ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyp::PowerSeriesCoeffs;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// `T_k(x)` or `U_k(x)` by `w_{k+1} = 2x w_k - w_{k-1}`.
pub fn chebyshev_eval(kind: ChebyshevKind, k: usize, x: f64) -> f64 {
    let w1 = match kind {
        ChebyshevKind::First => x,
        ChebyshevKind::Second => 2.0 * x,
    };
    if k == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, w1);
    for _ in 1..k {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// `Σ coeffs[k] P_k(x)` for the chosen Chebyshev family.
pub fn chebyshev_series(kind: ChebyshevKind, coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * chebyshev_eval(kind, k, x))
        .sum()
}

/// Coefficients of the real part against `T_0..T_n` and of the imaginary
/// part (divided by `sin τ`) against `U_0..U_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebDecomposition {
    pub t_coeffs: Vec<f64>,
    pub u_coeffs: Vec<f64>,
}

/// Decomposition for order `n`: `t = (d_0..d_n)`, `u = (d_1..d_{n+1})`.
pub fn kernel_decompose(d: &PowerSeriesCoeffs, n: usize) -> Result<ChebDecomposition> {
    let d = d.as_slice();
    if n + 1 >= d.len() {
        return Err(Error::SequenceExhausted {
            name: "d",
            index: n + 1,
        });
    }
    let mut real = Vec::with_capacity(n + 2);
    for (k, c) in d[..=n + 1].iter().enumerate() {
        if c.im != 0.0 || c.re <= 0.0 {
            return Err(Error::Precondition(format!(
                "coefficient d_{k} = {c} is not a positive real"
            )));
        }
        real.push(c.re);
    }
    Ok(ChebDecomposition {
        t_coeffs: real[..=n].to_vec(),
        u_coeffs: real[1..].to_vec(),
    })
}

/// Largest deviations of both identities over the sampled angles, as
/// `(real-part error, imaginary-part error)`.
pub fn kernel_identity_error(
    d: &PowerSeriesCoeffs,
    n: usize,
    angles: &[f64],
) -> Result<(f64, f64)> {
    let dec = kernel_decompose(d, n)?;
    let f_n = Poly::new(d.as_slice()[..=n].to_vec());
    let f_next = Poly::new(d.as_slice()[..=n + 1].to_vec());
    let mut worst = (0.0f64, 0.0f64);
    for &tau in angles {
        let z = Complex64::from_polar(1.0, tau);
        let x = tau.cos();
        let re = f_n.eval(z).re - chebyshev_series(ChebyshevKind::First, &dec.t_coeffs, x);
        let im = f_next.eval(z).im
            - tau.sin() * chebyshev_series(ChebyshevKind::Second, &dec.u_coeffs, x);
        worst = (worst.0.max(re.abs()), worst.1.max(im.abs()));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn chebyshev_examples() {
        assert!((chebyshev_eval(ChebyshevKind::First, 2, 0.5) + 0.5).abs() < 1e-15);
        assert!(chebyshev_eval(ChebyshevKind::Second, 2, 0.5).abs() < 1e-15);
        let t3 = chebyshev_eval(ChebyshevKind::First, 3, FRAC_PI_3.cos());
        assert!((t3 + 1.0).abs() < 1e-14);
        assert_eq!(chebyshev_eval(ChebyshevKind::Second, 0, 7.0), 1.0);
    }

    #[test]
    fn decomposition_examples() {
        let ones = PowerSeriesCoeffs::from_real(&[1.0; 4]).unwrap();
        let dec = kernel_decompose(&ones, 1).unwrap();
        assert_eq!(dec.t_coeffs, vec![1.0, 1.0]);

        let fact = PowerSeriesCoeffs::from_real(&[1.0, 1.0, 0.5]).unwrap();
        let dec = kernel_decompose(&fact, 0).unwrap();
        assert_eq!(dec.u_coeffs, vec![1.0]);

        let d = PowerSeriesCoeffs::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let dec = kernel_decompose(&d, 1).unwrap();
        assert_eq!(
            dec,
            ChebDecomposition {
                t_coeffs: vec![1.0, 2.0],
                u_coeffs: vec![2.0, 3.0]
            }
        );
        let (re, im) = kernel_identity_error(&d, 1, &[FRAC_PI_2]).unwrap();
        assert!(re < 1e-15 && im < 1e-15);
    }

    #[test]
    fn rejects_non_positive() {
        let d = PowerSeriesCoeffs::from_real(&[1.0, -2.0, 3.0]).unwrap();
        assert!(matches!(
            kernel_decompose(&d, 1),
            Err(Error::Precondition(_))
        ));
        let d = PowerSeriesCoeffs::new(vec![Complex64::new(1.0, 1.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!(kernel_decompose(&d, 0).is_err());
        let d = PowerSeriesCoeffs::from_real(&[1.0, 2.0]).unwrap();
        assert!(kernel_decompose(&d, 1).is_err());
    }
}
