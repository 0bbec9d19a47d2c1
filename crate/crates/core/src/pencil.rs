//! Jacobi-type pencils `(J3, J5, α, β)` and their associated polynomials,
//! the solutions of `(J5 - λ J3) p(λ) = 0` with `p_0 = 1`, `p_1 = αλ + β`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Poly, ZERO};

/// `J3` is tridiagonal with diagonal `b_k` and off-diagonal `a_k > 0`; `J5` is
/// symmetric pentadiagonal with diagonal `α_n`, first off-diagonal `β_n` and
/// second off-diagonal `γ_n > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiPencil {
    j3_diag: Vec<f64>,
    j3_off: Vec<f64>,
    j5_diag: Vec<f64>,
    j5_off1: Vec<f64>,
    j5_off2: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl JacobiPencil {
    pub fn new(
        j3_diag: Vec<f64>,
        j3_off: Vec<f64>,
        j5_diag: Vec<f64>,
        j5_off1: Vec<f64>,
        j5_off2: Vec<f64>,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        let all = j3_diag
            .iter()
            .chain(&j3_off)
            .chain(&j5_diag)
            .chain(&j5_off1)
            .chain(&j5_off2)
            .chain([&alpha, &beta]);
        if all.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("pencil entries"));
        }
        if let Some(k) = j3_off.iter().position(|&a| a <= 0.0) {
            return Err(Error::Precondition(format!(
                "J3 off-diagonal a_{k} must be positive"
            )));
        }
        if let Some(k) = j5_off2.iter().position(|&g| g <= 0.0) {
            return Err(Error::Precondition(format!(
                "J5 second off-diagonal gamma_{k} must be positive"
            )));
        }
        if alpha <= 0.0 {
            return Err(Error::Precondition("alpha must be positive".into()));
        }
        Ok(JacobiPencil {
            j3_diag,
            j3_off,
            j5_diag,
            j5_off1,
            j5_off2,
            alpha,
            beta,
        })
    }

    pub fn j3_diag(&self) -> &[f64] {
        &self.j3_diag
    }
    pub fn j3_off(&self) -> &[f64] {
        &self.j3_off
    }
    pub fn j5_diag(&self) -> &[f64] {
        &self.j5_diag
    }
    pub fn j5_off1(&self) -> &[f64] {
        &self.j5_off1
    }
    pub fn j5_off2(&self) -> &[f64] {
        &self.j5_off2
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Entry `n` of a diagonal; negative indices read as zero.
    fn get(seq: &[f64], name: &'static str, n: isize) -> Result<f64> {
        if n < 0 {
            return Ok(0.0);
        }
        seq.get(n as usize)
            .copied()
            .ok_or(Error::SequenceExhausted {
                name,
                index: n as usize,
            })
    }

    /// The terms of row `n` of `(J5 - λ J3) p` as
    /// `[γ_{n-2}, β_{n-1} - λa_{n-1}, α_n - λb_n, β_n - λa_n, γ_n]`.
    fn row_coeffs(&self, n: usize, lambda: Complex64) -> Result<[Complex64; 5]> {
        let n = n as isize;
        let re = |x: f64| Complex64::new(x, 0.0);
        Ok([
            re(Self::get(&self.j5_off2, "gamma", n - 2)?),
            Self::get(&self.j5_off1, "beta", n - 1)?
                - lambda * Self::get(&self.j3_off, "a", n - 1)?,
            Self::get(&self.j5_diag, "alpha", n)? - lambda * Self::get(&self.j3_diag, "b", n)?,
            Self::get(&self.j5_off1, "beta", n)? - lambda * Self::get(&self.j3_off, "a", n)?,
            re(Self::get(&self.j5_off2, "gamma", n)?),
        ])
    }
}

/// `p_0..=p_N` in the variable `λ`, each `p_{n+2}` solved from row `n`:
/// `γ_n p_{n+2} = -[γ_{n-2} p_{n-2} + (β_{n-1} - λa_{n-1}) p_{n-1}
///  + (α_n - λb_n) p_n + (β_n - λa_n) p_{n+1}]`.
pub fn pencil_polynomials(pencil: &JacobiPencil, big_n: usize) -> Result<Vec<Poly>> {
    let mut ps = vec![Poly::one(), Poly::from_real(&[pencil.beta, pencil.alpha])];
    ps.truncate(big_n + 1);
    let get = JacobiPencil::get;
    for n in 0..big_n.saturating_sub(1) {
        let ni = n as isize;
        let lin = |c: f64, l: f64| Poly::from_real(&[c, -l]);
        let mut acc = lin(
            get(&pencil.j5_diag, "alpha", ni)?,
            get(&pencil.j3_diag, "b", ni)?,
        )
        .mul(&ps[n]);
        acc = &acc
            + &lin(
                get(&pencil.j5_off1, "beta", ni)?,
                get(&pencil.j3_off, "a", ni)?,
            )
            .mul(&ps[n + 1]);
        if n >= 1 {
            acc = &acc
                + &lin(
                    get(&pencil.j5_off1, "beta", ni - 1)?,
                    get(&pencil.j3_off, "a", ni - 1)?,
                )
                .mul(&ps[n - 1]);
        }
        if n >= 2 {
            acc = &acc
                + &ps[n - 2].scale(Complex64::new(get(&pencil.j5_off2, "gamma", ni - 2)?, 0.0));
        }
        let gamma = get(&pencil.j5_off2, "gamma", ni)?;
        ps.push(acc.scale(Complex64::new(-1.0 / gamma, 0.0)));
    }
    Ok(ps)
}

/// Row-by-row evaluation of `(J5 - λJ3) p(λ)` over rows `0..rows`.
fn row_terms(
    pencil: &JacobiPencil,
    polys: &[Poly],
    lambda: Complex64,
    rows: usize,
) -> Result<Vec<[Complex64; 5]>> {
    if polys.len() < rows + 2 {
        return Err(Error::Precondition(format!(
            "{rows} rows need {} polynomials, got {}",
            rows + 2,
            polys.len()
        )));
    }
    let vals: Vec<Complex64> = polys.iter().map(|p| p.eval(lambda)).collect();
    (0..rows)
        .map(|n| {
            let coeffs = pencil.row_coeffs(n, lambda)?;
            let mut terms = [ZERO; 5];
            for (i, c) in coeffs.iter().enumerate() {
                let idx = n as isize + i as isize - 2;
                if idx >= 0 {
                    terms[i] = c * vals[idx as usize];
                }
            }
            Ok(terms)
        })
        .collect()
}

/// Largest `|row_n|` of `(J5 - λJ3) p(λ)` over the first `rows` rows.
pub fn pencil_residual(
    pencil: &JacobiPencil,
    polys: &[Poly],
    lambda: Complex64,
    rows: usize,
) -> Result<f64> {
    Ok(row_terms(pencil, polys, lambda, rows)?
        .iter()
        .map(|t| t.iter().sum::<Complex64>().norm())
        .fold(0.0, f64::max))
}

/// Largest `Σ |term|` over the same rows; the scale against which
/// [`pencil_residual`] is judged.
pub fn pencil_residual_scale(
    pencil: &JacobiPencil,
    polys: &[Poly],
    lambda: Complex64,
    rows: usize,
) -> Result<f64> {
    Ok(row_terms(pencil, polys, lambda, rows)?
        .iter()
        .map(|t| t.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> JacobiPencil {
        JacobiPencil::new(
            vec![0.0; 6],
            vec![1.0; 6],
            vec![0.0; 6],
            vec![0.0; 6],
            vec![1.0; 6],
            1.0,
            0.0,
        )
        .unwrap()
    }

    #[test]
    fn initial_data() {
        let pen = JacobiPencil::new(vec![], vec![], vec![], vec![], vec![], 2.5, -0.5).unwrap();
        let ps = pencil_polynomials(&pen, 1).unwrap();
        assert_eq!(ps[0], Poly::one());
        assert_eq!(ps[1], Poly::from_real(&[-0.5, 2.5]));
        assert_eq!(pencil_polynomials(&pen, 0).unwrap(), vec![Poly::one()]);
    }

    #[test]
    fn worked_example() {
        let ps = pencil_polynomials(&worked(), 2).unwrap();
        assert_eq!(ps[2], Poly::from_real(&[0.0, 0.0, 1.0]));
    }

    #[test]
    fn residual_examples() {
        let pen = worked();
        let ps = pencil_polynomials(&pen, 5).unwrap();
        assert!(pencil_residual(&pen, &ps, ZERO, 3).unwrap() <= 1e-12);
        let two = Complex64::new(2.0, 0.0);
        assert!(pencil_residual(&pen, &ps, two, 3).unwrap() <= 1e-10);

        let mut bumped = ps.clone();
        bumped[2] = &bumped[2] + &Poly::one();
        let r0 = pencil_residual(&pen, &bumped, two, 1).unwrap();
        assert!((r0 - 1.0).abs() < 1e-15);
        assert!(pencil_residual(&pen, &ps, two, 5).is_err());
    }

    #[test]
    fn constraints() {
        let ok = |a: Vec<f64>, g: Vec<f64>, alpha: f64| {
            JacobiPencil::new(vec![0.0], a, vec![0.0], vec![0.0], g, alpha, 0.0).is_ok()
        };
        assert!(ok(vec![1.0], vec![1.0], 1.0));
        assert!(!ok(vec![0.0], vec![1.0], 1.0));
        assert!(!ok(vec![1.0], vec![-1.0], 1.0));
        assert!(!ok(vec![1.0], vec![1.0], 0.0));
    }

    #[test]
    fn exhaustion() {
        let pen = JacobiPencil::new(
            vec![0.0],
            vec![1.0],
            vec![0.0],
            vec![0.0],
            vec![1.0],
            1.0,
            0.0,
        )
        .unwrap();
        assert!(pencil_polynomials(&pen, 2).is_ok());
        assert!(matches!(
            pencil_polynomials(&pen, 3),
            Err(Error::SequenceExhausted { .. })
        ));
    }
}
