//! Log-likelihood, per-observation scores and Hessians for the
//! location-scale BASN2 model. Parameter order is `(alpha, mu, sigma)`.
//!
//! With `z = (y - mu)/sigma`, `b = 1 - alpha z`, `q = b^2 + 1`,
//! `A = b/q`, `A' = (1 - b^2)/q^2` and `D = 4 + 8a^2 + 3a^4`, one
//! observation contributes `2 ln q - ln D - ln sigma - ln sqrt(2 pi) - z^2/2`.

use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use crate::density::LocScaleParams;
use crate::error::{BasnError, Result};
use crate::special::{compensated_sum, LN_SQRT_2PI};

pub type Matrix = [[f64; 3]; 3];

#[inline]
fn log_norm(alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    (4.0 + 8.0 * a2 + 3.0 * a2 * a2).ln()
}

/// Total log-likelihood.
pub fn basn2_loglik(values: &[f64], p: &LocScaleParams) -> f64 {
    let c = -log_norm(p.alpha) - p.sigma.ln() - LN_SQRT_2PI;
    compensated_sum(values.iter().map(|&y| {
        let z = (y - p.mu) / p.sigma;
        let b = 1.0 - p.alpha * z;
        2.0 * (b * b + 1.0).ln() - 0.5 * z * z + c
    }))
}

/// Normal log-likelihood, the `alpha = 0` member.
pub fn normal_loglik(values: &[f64], mu: f64, sigma: f64) -> f64 {
    let c = -sigma.ln() - LN_SQRT_2PI;
    compensated_sum(values.iter().map(|&y| {
        let z = (y - mu) / sigma;
        c - 0.5 * z * z
    }))
}

struct Pieces {
    z: f64,
    a: f64,
    a_prime: f64,
}

#[inline]
fn pieces(y: f64, p: &LocScaleParams) -> Pieces {
    let z = (y - p.mu) / p.sigma;
    let b = 1.0 - p.alpha * z;
    let q = b * b + 1.0;
    Pieces {
        z,
        a: b / q,
        a_prime: (1.0 - b * b) / (q * q),
    }
}

/// Score of a single observation.
pub fn obs_score(y: f64, p: &LocScaleParams) -> [f64; 3] {
    let Pieces { z, a, .. } = pieces(y, p);
    let (al, s) = (p.alpha, p.sigma);
    let a2 = al * al;
    let d = 4.0 + 8.0 * a2 + 3.0 * a2 * a2;
    let d1 = 16.0 * al + 12.0 * a2 * al;
    [
        -4.0 * z * a - d1 / d,
        (4.0 * al * a + z) / s,
        (4.0 * al * z * a - 1.0 + z * z) / s,
    ]
}

/// Hessian of a single observation's log-likelihood.
pub fn obs_hessian(y: f64, p: &LocScaleParams) -> Matrix {
    let Pieces { z, a, a_prime: ap } = pieces(y, p);
    let (al, s) = (p.alpha, p.sigma);
    let a2 = al * al;
    let d = 4.0 + 8.0 * a2 + 3.0 * a2 * a2;
    let d1 = 16.0 * al + 12.0 * a2 * al;
    let d2 = 16.0 + 36.0 * a2;
    let s2 = s * s;

    let h_aa = 4.0 * z * z * ap - (d2 * d - d1 * d1) / (d * d);
    let h_am = (4.0 * a - 4.0 * al * z * ap) / s;
    let h_as = (4.0 * z * a - 4.0 * al * z * z * ap) / s;
    let h_mm = (4.0 * a2 * ap - 1.0) / s2;
    let h_ms = (4.0 * a2 * z * ap - 4.0 * al * a - 2.0 * z) / s2;
    let h_ss = (-8.0 * al * z * a + 4.0 * a2 * z * z * ap + 1.0 - 3.0 * z * z) / s2;
    [[h_aa, h_am, h_as], [h_am, h_mm, h_ms], [h_as, h_ms, h_ss]]
}

/// Total score vector.
pub fn score(values: &[f64], p: &LocScaleParams) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = compensated_sum(values.iter().map(|&y| obs_score(y, p)[k]));
    }
    out
}

/// Negative Hessian of the total log-likelihood.
pub fn observed_info(values: &[f64], p: &LocScaleParams) -> Matrix {
    let mut out = [[0.0; 3]; 3];
    for &y in values {
        let h = obs_hessian(y, p);
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] -= h[i][j];
            }
        }
    }
    out
}

/// Negative Hessian from central differences of the analytic total score.
pub fn observed_info_numeric(values: &[f64], p: &LocScaleParams) -> Result<Matrix> {
    let base = p.as_array();
    let mut out = [[0.0; 3]; 3];
    for j in 0..3 {
        let h = 1e-5 * base[j].abs().max(1.0);
        let mut up = base;
        let mut dn = base;
        up[j] += h;
        dn[j] -= h;
        let su = score(values, &LocScaleParams::new(up[0], up[1], up[2])?);
        let sd = score(values, &LocScaleParams::new(dn[0], dn[1], dn[2])?);
        for i in 0..3 {
            out[i][j] = -(su[i] - sd[i]) / (2.0 * h);
        }
    }
    // symmetrize
    for i in 0..3 {
        for j in 0..i {
            let m = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = m;
            out[j][i] = m;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixDiagnostics {
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub condition: f64,
}

pub fn diagnostics(m: &Matrix) -> MatrixDiagnostics {
    let eig = SymmetricEigen::new(to_na(m)).eigenvalues;
    let min = eig.min();
    let max = eig.max();
    MatrixDiagnostics {
        min_eigenvalue: min,
        max_eigenvalue: max,
        condition: if min > 0.0 { max / min } else { f64::INFINITY },
    }
}

fn to_na(m: &Matrix) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j])
}

/// Inverse of a positive definite information matrix.
pub fn vcov(info: &Matrix) -> Result<Matrix> {
    let chol = to_na(info).cholesky().ok_or_else(|| {
        let d = diagnostics(info);
        BasnError::NotPositiveDefinite {
            min_eigenvalue: d.min_eigenvalue,
            condition: d.condition,
        }
    })?;
    let inv = chol.inverse();
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = 0.5 * (inv[(i, j)] + inv[(j, i)]);
        }
    }
    Ok(out)
}

/// Solves `info * x = rhs` for a positive definite `info`.
pub(crate) fn solve_pd(info: &Matrix, rhs: [f64; 3]) -> Option<[f64; 3]> {
    let chol = to_na(info).cholesky()?;
    let x = chol.solve(&nalgebra::Vector3::new(rhs[0], rhs[1], rhs[2]));
    Some([x[0], x[1], x[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::LocScaleBasn2;

    fn params(a: f64, m: f64, s: f64) -> LocScaleParams {
        LocScaleParams::new(a, m, s).unwrap()
    }

    fn data() -> Vec<f64> {
        (0..40).map(|i| ((i * 37 % 41) as f64 - 20.0) / 6.0 + 0.3 * (i as f64).sin()).collect()
    }

    #[test]
    fn loglik_matches_logpdf_sum() {
        let y = data();
        for p in [params(1.2, 0.3, 1.4), params(-0.4, -1.0, 0.7), params(0.0, 0.0, 1.0)] {
            let d = LocScaleBasn2::new(p);
            let direct: f64 = y.iter().map(|&v| d.ln_pdf(v)).sum();
            assert!((basn2_loglik(&y, &p) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn alpha_zero_is_normal() {
        let y = data();
        let ll = basn2_loglik(&y, &params(0.0, 0.4, 2.1));
        assert!((ll - normal_loglik(&y, 0.4, 2.1)).abs() < 1e-10);
    }

    #[test]
    fn scores_match_finite_differences() {
        let p = params(0.8, 0.2, 1.3);
        for y in [-2.0, -0.1, 0.5, 3.0] {
            let s = obs_score(y, &p);
            let base = p.as_array();
            for k in 0..3 {
                let h = 1e-6;
                let mut up = base;
                let mut dn = base;
                up[k] += h;
                dn[k] -= h;
                let lu = basn2_loglik(&[y], &params(up[0], up[1], up[2]));
                let ld = basn2_loglik(&[y], &params(dn[0], dn[1], dn[2]));
                let fd = (lu - ld) / (2.0 * h);
                assert!((s[k] - fd).abs() < 1e-6 * fd.abs().max(1.0), "y={y} k={k}");
            }
        }
    }

    #[test]
    fn hessian_matches_numeric() {
        let y = data();
        let p = params(1.1, 0.1, 1.6);
        let a = observed_info(&y, &p);
        let n = observed_info_numeric(&y, &p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - n[i][j]).abs() <= 1e-4 * a[i][j].abs().max(1.0));
            }
            for j in 0..3 {
                assert_eq!(a[i][j], a[j][i]);
            }
        }
    }

    #[test]
    fn normal_information_entry() {
        let y = data();
        let n = y.len() as f64;
        let m1 = y.iter().sum::<f64>() / n;
        let s = (y.iter().map(|v| (v - m1).powi(2)).sum::<f64>() / n).sqrt();
        let info = observed_info(&y, &params(0.0, m1, s));
        assert!((info[1][1] - n / (s * s)).abs() < 1e-10 * n / (s * s));
    }

    #[test]
    fn vcov_of_identity() {
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(vcov(&id).unwrap(), id);
        let bad = [[1.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 1.0]];
        match vcov(&bad) {
            Err(BasnError::NotPositiveDefinite { min_eigenvalue, .. }) => {
                assert!((min_eigenvalue + 2.0).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
    }
}
