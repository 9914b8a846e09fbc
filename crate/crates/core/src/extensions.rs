//! Extension families built on the BASN2 skew factor: bivariate (BBASN2),
//! two-parameter (TPBASN2), alpha-beta (BABSN2), generalized with a normal
//! cdf factor (GBASN2) and log-transformed (LBASN2).
//!
//! Each constructor evaluates the published closed-form normalizing
//! constant and audits it against a one-dimensional quadrature of the
//! unnormalized density. On a mismatch beyond [`CONSTANT_TOLERANCE`] the
//! quadrature value is used and the audit is kept on the struct.

use serde::Serialize;

use crate::density::{AlphaParam, NormConstants};
use crate::error::{BasnError, Result};
use crate::quadrature::{integrate, integrate_2d, quad, Tolerance};
use crate::special::{ln_phi, norm_cdf, phi, SQRT_2_OVER_PI};

pub const CONSTANT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantAudit {
    pub family: &'static str,
    pub closed_form: f64,
    pub quadrature: f64,
    pub rel_error: f64,
}

impl ConstantAudit {
    fn new(family: &'static str, closed_form: f64, quadrature: f64) -> Self {
        ConstantAudit {
            family,
            closed_form,
            quadrature,
            rel_error: (closed_form - quadrature).abs() / quadrature.abs(),
        }
    }

    pub fn consistent(&self) -> bool {
        self.rel_error <= CONSTANT_TOLERANCE
    }

    /// The constant the density actually divides by.
    pub fn value(&self) -> f64 {
        if self.consistent() {
            self.closed_form
        } else {
            self.quadrature
        }
    }
}

fn line_integral<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    quad(f, f64::NEG_INFINITY, f64::INFINITY)
}

#[inline]
fn skew_sq(b: f64) -> f64 {
    let q = b * b + 1.0;
    q * q
}

// ---------------------------------------------------------------- bivariate

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BivariateParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub rho: f64,
}

impl BivariateParams {
    pub fn new(alpha1: f64, alpha2: f64, rho: f64) -> Result<Self> {
        if !(alpha1.is_finite() && alpha2.is_finite()) {
            return Err(BasnError::domain("alpha1 and alpha2 must be finite"));
        }
        if !(rho.abs() < 1.0) {
            return Err(BasnError::domain(format!("|rho| must be < 1, got {rho}")));
        }
        Ok(BivariateParams { alpha1, alpha2, rho })
    }
}

/// Bivariate normal density with unit variances and correlation `rho`.
pub fn bivariate_normal_pdf(z1: f64, z2: f64, rho: f64) -> f64 {
    let det = 1.0 - rho * rho;
    let quad_form = (z1 * z1 - 2.0 * rho * z1 * z2 + z2 * z2) / det;
    (-0.5 * quad_form).exp() / (2.0 * std::f64::consts::PI * det.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bbasn2 {
    params: BivariateParams,
    audit: ConstantAudit,
}

impl Bbasn2 {
    pub fn new(params: BivariateParams) -> Result<Self> {
        let BivariateParams { alpha1: a1, alpha2: a2, rho } = params;
        let s2 = a1 * a1 + 2.0 * rho * a1 * a2 + a2 * a2;
        let closed = (2.0 + s2) * (2.0 + 3.0 * s2);
        // alpha1 z1 + alpha2 z2 ~ N(0, s2) under phi2
        let numeric = if s2 > 0.0 {
            let s = s2.sqrt();
            line_integral(|w| skew_sq(1.0 - s * w) * phi(w))?
        } else {
            4.0
        };
        Ok(Bbasn2 {
            params,
            audit: ConstantAudit::new("bbasn2", closed, numeric),
        })
    }

    pub fn audit(&self) -> ConstantAudit {
        self.audit
    }

    pub fn unnormalized(&self, z1: f64, z2: f64) -> f64 {
        let p = self.params;
        skew_sq(1.0 - p.alpha1 * z1 - p.alpha2 * z2) * bivariate_normal_pdf(z1, z2, p.rho)
    }

    pub fn pdf(&self, z1: f64, z2: f64) -> f64 {
        self.unnormalized(z1, z2) / self.audit.value()
    }

    /// Full 2-D cubature of the unnormalized density over `[-L, L]^2`.
    pub fn cubature_constant(&self, half_width: f64) -> Result<f64> {
        let r = integrate_2d(
            |x, y| self.unnormalized(x, y),
            (-half_width, half_width),
            (-half_width, half_width),
            Tolerance::new(1e-10, 1e-10),
        )?;
        Ok(r.value)
    }
}

// ------------------------------------------------------------ two-parameter

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoAlphaParams {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl TwoAlphaParams {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        if !(alpha1.is_finite() && alpha2.is_finite()) {
            return Err(BasnError::domain("alpha1 and alpha2 must be finite"));
        }
        Ok(TwoAlphaParams { alpha1, alpha2 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tpbasn2 {
    params: TwoAlphaParams,
    audit: ConstantAudit,
}

pub fn tpbasn2_closed_constant(a1: f64, a2: f64) -> f64 {
    let (a1s, a2s) = (a1 * a1, a2 * a2);
    32.0 * a1 * a2 * (2.0 + 3.0 * a2s)
        + 48.0 * a1s * a1 * a2 * (2.0 + 5.0 * a2s)
        + 4.0 * (4.0 + 8.0 * a2s + 3.0 * a2s * a2s)
        + 8.0 * a1s * (4.0 + 24.0 * a2s + 15.0 * a2s * a2s)
        + 3.0 * a1s * a1s * (4.0 + 40.0 * a2s + 35.0 * a2s * a2s)
}

impl Tpbasn2 {
    pub fn new(params: TwoAlphaParams) -> Result<Self> {
        let TwoAlphaParams { alpha1: a1, alpha2: a2 } = params;
        let numeric = line_integral(|z| skew_sq(1.0 - a1 * z) * skew_sq(1.0 - a2 * z) * phi(z))?;
        Ok(Tpbasn2 {
            params,
            audit: ConstantAudit::new("tpbasn2", tpbasn2_closed_constant(a1, a2), numeric),
        })
    }

    pub fn audit(&self) -> ConstantAudit {
        self.audit
    }

    pub fn pdf(&self, z: f64) -> f64 {
        let p = self.params;
        skew_sq(1.0 - p.alpha1 * z) * skew_sq(1.0 - p.alpha2 * z) * phi(z) / self.audit.value()
    }
}

// --------------------------------------------------------------- alpha-beta

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaBetaParams {
    pub alpha: f64,
    pub beta: f64,
}

impl AlphaBetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(BasnError::domain("alpha and beta must be finite"));
        }
        Ok(AlphaBetaParams { alpha, beta })
    }
}

pub fn babsn2_closed_constant(a: f64, b: f64) -> f64 {
    let (a2, b2) = (a * a, b * b);
    4.0 + 3.0 * a2 * a2
        + 60.0 * a2 * a * b
        + 12.0 * a * b * (4.0 + 315.0 * b2)
        + a2 * (8.0 + 630.0 * b2)
        + 15.0 * b2 * (8.0 + 693.0 * b2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Babsn2 {
    params: AlphaBetaParams,
    audit: ConstantAudit,
}

impl Babsn2 {
    pub fn new(params: AlphaBetaParams) -> Result<Self> {
        let AlphaBetaParams { alpha: a, beta: b } = params;
        let numeric = line_integral(|z| skew_sq(1.0 - a * z - b * z * z * z) * phi(z))?;
        Ok(Babsn2 {
            params,
            audit: ConstantAudit::new("babsn2", babsn2_closed_constant(a, b), numeric),
        })
    }

    pub fn audit(&self) -> ConstantAudit {
        self.audit
    }

    pub fn pdf(&self, z: f64) -> f64 {
        let p = self.params;
        skew_sq(1.0 - p.alpha * z - p.beta * z * z * z) * phi(z) / self.audit.value()
    }
}

// -------------------------------------------------------------- generalized

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenParams {
    pub alpha: f64,
    pub lambda: f64,
    /// `lambda / sqrt(1 + lambda^2)`
    pub delta: f64,
}

impl GenParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha.is_finite() && lambda.is_finite()) {
            return Err(BasnError::domain("alpha and lambda must be finite"));
        }
        let delta = lambda / (1.0 + lambda * lambda).sqrt();
        if !(delta.abs() < 1.0) {
            return Err(BasnError::domain(format!("lambda too large: |delta| = 1 at lambda = {lambda}")));
        }
        Ok(GenParams { alpha, lambda, delta })
    }
}

pub fn gbasn2_closed_constant(p: &GenParams) -> f64 {
    let (a, d) = (p.alpha, p.delta);
    let a3 = a * a * a;
    (2.0 + 4.0 * a * a + 1.5 * a3 * a)
        - SQRT_2_OVER_PI * (2.0 * a3 * (1.0 - d * d) * d + 4.0 * a * d + 4.0 * a3 * d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gbasn2 {
    params: GenParams,
    audit: ConstantAudit,
}

impl Gbasn2 {
    pub fn new(params: GenParams) -> Result<Self> {
        let (a, l) = (params.alpha, params.lambda);
        let numeric = line_integral(|z| skew_sq(1.0 - a * z) * phi(z) * norm_cdf(l * z))?;
        Ok(Gbasn2 {
            params,
            audit: ConstantAudit::new("gbasn2", gbasn2_closed_constant(&params), numeric),
        })
    }

    pub fn audit(&self) -> ConstantAudit {
        self.audit
    }

    pub fn pdf(&self, z: f64) -> f64 {
        let p = self.params;
        skew_sq(1.0 - p.alpha * z) * phi(z) * norm_cdf(p.lambda * z) / self.audit.value()
    }
}

// ---------------------------------------------------------------------- log

/// LBASN2(alpha): `Z = exp(Y)` with `Y ~ BASN2(alpha)`. The density carries
/// the `1/z` Jacobian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lbasn2 {
    alpha: AlphaParam,
    d: f64,
}

impl Lbasn2 {
    pub fn new(alpha: AlphaParam) -> Self {
        Lbasn2 {
            alpha,
            d: NormConstants::new(alpha).d,
        }
    }

    pub fn pdf(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(BasnError::domain(format!("LBASN2 support is z > 0, got {z}")));
        }
        let y = z.ln();
        Ok(skew_sq(1.0 - self.alpha.value() * y) * phi(y) / (z * self.d))
    }

    pub fn ln_pdf(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(BasnError::domain(format!("LBASN2 support is z > 0, got {z}")));
        }
        let y = z.ln();
        Ok(skew_sq(1.0 - self.alpha.value() * y).ln() + ln_phi(y) - y - self.d.ln())
    }

    /// Mass on `(0, inf)` by quadrature in the log scale.
    pub fn total_mass(&self) -> Result<f64> {
        let r = integrate(
            |y| {
                let z = y.exp();
                self.pdf(z).map(|f| f * z).unwrap_or(0.0)
            },
            f64::NEG_INFINITY,
            f64::INFINITY,
            Tolerance::default(),
        )?;
        Ok(r.value)
    }
}

/// Limit densities approached as the shape parameters grow without bound.
pub mod limits {
    use super::bivariate_normal_pdf;
    use crate::special::{norm_cdf, phi};

    /// `z^4 phi(z) / 3`: BASN2 and BABSN2 as `|alpha| -> inf`.
    pub fn bn4(z: f64) -> f64 {
        z.powi(4) * phi(z) / 3.0
    }

    /// `z^8 phi(z) / 105`: TPBASN2 with `alpha1 = alpha2 -> inf`.
    pub fn bn8(z: f64) -> f64 {
        z.powi(8) * phi(z) / 105.0
    }

    /// `z^12 phi(z) / 10395`: BABSN2 as `|beta| -> inf`.
    pub fn bn12(z: f64) -> f64 {
        z.powi(12) * phi(z) / 10395.0
    }

    /// `(z1 + z2)^4 phi2(z) / (12 (1 + rho)^2)`: BBASN2 with `alpha1 = alpha2 -> inf`.
    pub fn bivariate_equal_alpha(z1: f64, z2: f64, rho: f64) -> f64 {
        (z1 + z2).powi(4) * bivariate_normal_pdf(z1, z2, rho) / (12.0 * (1.0 + rho).powi(2))
    }

    /// `2 z^4 phi(z) Phi(lambda z) / 3`: GBASN2 as `|alpha| -> inf`.
    pub fn gbasn2_large_alpha(z: f64, lambda: f64) -> f64 {
        2.0 * z.powi(4) * phi(z) * norm_cdf(lambda * z) / 3.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::Basn2;

    #[test]
    fn bivariate_examples() {
        let b = Bbasn2::new(BivariateParams::new(0.0, 0.0, 0.5).unwrap()).unwrap();
        let expected = 1.0 / (2.0 * std::f64::consts::PI * 0.75f64.sqrt());
        assert!((b.pdf(0.0, 0.0) - expected).abs() < 1e-15);
        assert!((b.pdf(0.0, 0.0) - 0.183_78).abs() < 1e-5);
        let b = Bbasn2::new(BivariateParams::new(1.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(b.audit().closed_form, 32.0);
        assert!(b.audit().consistent());
        assert!(BivariateParams::new(1.0, 1.0, 1.0).is_err());
        assert!(BivariateParams::new(1.0, 1.0, -1.2).is_err());
    }

    #[test]
    fn bivariate_marginal_special_case() {
        // alpha2 = 0: the skew factor only involves z1
        let (a1, rho) = (1.3, 0.4);
        let b = Bbasn2::new(BivariateParams::new(a1, 0.0, rho).unwrap()).unwrap();
        let d = 4.0 + 8.0 * a1 * a1 + 3.0 * a1.powi(4);
        for (z1, z2) in [(0.2, -1.0), (-1.5, 0.3), (2.0, 2.0)] {
            let expected = skew_sq(1.0 - a1 * z1) / d * bivariate_normal_pdf(z1, z2, rho);
            assert!((b.pdf(z1, z2) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn two_alpha_examples() {
        let t = Tpbasn2::new(TwoAlphaParams::new(0.0, 0.0).unwrap()).unwrap();
        assert!((t.pdf(0.7) - phi(0.7)).abs() < 1e-16);
        let t = Tpbasn2::new(TwoAlphaParams::new(0.0, 1.7).unwrap()).unwrap();
        let b = Basn2::with_alpha(1.7).unwrap();
        for z in [-2.0, 0.1, 1.4] {
            assert!((t.pdf(z) - b.pdf(z)).abs() < 1e-15);
        }
        assert_eq!(tpbasn2_closed_constant(1.0, 1.0), 1137.0);
        let a: f64 = 0.8;
        let equal = 16.0 + 128.0 * a.powi(2) + 408.0 * a.powi(4) + 480.0 * a.powi(6) + 105.0 * a.powi(8);
        assert!((tpbasn2_closed_constant(a, a) - equal).abs() < 1e-12 * equal);
    }

    #[test]
    fn alpha_beta_examples() {
        let t = Babsn2::new(AlphaBetaParams::new(-0.6, 0.0).unwrap()).unwrap();
        let b = Basn2::with_alpha(-0.6).unwrap();
        assert!((t.pdf(0.9) - b.pdf(0.9)).abs() < 1e-15);
        assert_eq!(babsn2_closed_constant(0.0, 0.0), 4.0);
        assert_eq!(babsn2_closed_constant(1.0, 1.0), 15048.0);
        assert!(Babsn2::new(AlphaBetaParams::new(1.0, 1.0).unwrap()).unwrap().audit().consistent());
    }

    #[test]
    fn generalized_examples() {
        let g = Gbasn2::new(GenParams::new(0.0, 2.0).unwrap()).unwrap();
        for z in [-1.0, 0.0, 0.8] {
            assert!((g.pdf(z) - 2.0 * phi(z) * norm_cdf(2.0 * z)).abs() < 1e-15);
        }
        let g = Gbasn2::new(GenParams::new(1.2, 0.0).unwrap()).unwrap();
        let b = Basn2::with_alpha(1.2).unwrap();
        assert!((g.pdf(-0.4) - b.pdf(-0.4)).abs() < 1e-15);
        let g = Gbasn2::new(GenParams::new(1.0, 1.0).unwrap()).unwrap();
        assert!(g.audit().consistent(), "{:?}", g.audit());
    }

    #[test]
    fn log_examples() {
        let l0 = Lbasn2::new(AlphaParam::new(0.0).unwrap());
        assert!((l0.pdf(1.0).unwrap() - 0.398_942_3).abs() < 1e-7);
        assert!((l0.pdf(std::f64::consts::E).unwrap() - 0.089_016_05).abs() < 1e-7);
        let l1 = Lbasn2::new(AlphaParam::new(1.0).unwrap());
        assert!((l1.pdf(1.0).unwrap() - 4.0 * phi(0.0) / 15.0).abs() < 1e-16);
        assert!((l1.pdf(1.0).unwrap() - 0.106_384_6).abs() < 1e-7);
        assert!((l1.ln_pdf(2.5).unwrap() - l1.pdf(2.5).unwrap().ln()).abs() < 1e-13);
        assert!(l1.pdf(0.0).is_err());
        assert!(l1.pdf(-1.0).is_err());
        assert!((l1.total_mass().unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mismatched_constant_falls_back_to_quadrature() {
        let audit = ConstantAudit::new("test", 10.0, 12.0);
        assert!(!audit.consistent());
        assert_eq!(audit.value(), 12.0);
        let audit = ConstantAudit::new("test", 12.0 * (1.0 + 1e-9), 12.0);
        assert!(audit.consistent());
    }

    #[test]
    fn gen_params_reject_non_finite() {
        assert!(GenParams::new(f64::NAN, 1.0).is_err());
        assert!(GenParams::new(1.0, f64::INFINITY).is_err());
        assert!((GenParams::new(1.0, 1.0).unwrap().delta - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
