//! Densities, distribution functions, quantiles and mode structure of the
//! BASN2 family, its symmetric component SCBASN2, the generalized bimodal
//! normal BN(n), and the location-scale wrapper.
//!
//! Every density here has the shape `P(z) * phi(z) / c` for a polynomial
//! `P`, so the cdfs are `Phi(z)` plus a polynomial times `phi(z)`.

use serde::{Deserialize, Serialize};

use crate::error::{BasnError, Result};
use crate::special::{ln_phi, norm_cdf, norm_quantile, norm_sf, phi};

/// Shape parameter of the standard BASN2 family.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(BasnError::domain(format!("alpha must be finite, got {alpha}")));
        }
        Ok(AlphaParam(alpha))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn reflect(self) -> Self {
        AlphaParam(-self.0)
    }
}

/// Even order of the generalized bimodal normal BN(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnOrder(u32);

impl BnOrder {
    pub const MAX: i64 = 32;

    pub fn new(n: i64) -> Result<Self> {
        if n < 0 || n % 2 != 0 || n > Self::MAX {
            return Err(BasnError::domain(format!(
                "BN order must be an even integer in [0, {}], got {n}",
                Self::MAX
            )));
        }
        Ok(BnOrder(n as u32))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Normalizing constant `(n-1)!!`.
    pub fn constant(self) -> f64 {
        crate::special::double_factorial(self.0 as i64 - 1)
    }
}

/// Density of BN(n): `z^n phi(z) / (n-1)!!`.
pub fn bn_pdf(z: f64, n: BnOrder) -> f64 {
    z.powi(n.value() as i32) * phi(z) / n.constant()
}

/// Cdf of BN(4), the `|alpha| -> inf` limit of BASN2.
pub fn bn4_cdf(z: f64) -> f64 {
    if z.is_infinite() {
        return if z > 0.0 { 1.0 } else { 0.0 };
    }
    if z > 0.0 {
        1.0 - bn4_sf(z)
    } else {
        (norm_cdf(z) - z * (3.0 + z * z) * phi(z) / 3.0).max(0.0)
    }
}

fn bn4_sf(z: f64) -> f64 {
    (norm_sf(z) + z * (3.0 + z * z) * phi(z) / 3.0).max(0.0)
}

/// `C2(alpha) = 3 - 4/(2+alpha^2)` and the full normalizer
/// `d = C2 (2+alpha^2)^2 = (2+alpha^2)(2+3 alpha^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormConstants {
    pub c2: f64,
    pub d: f64,
}

impl NormConstants {
    pub fn new(alpha: AlphaParam) -> Self {
        let a2 = alpha.value() * alpha.value();
        NormConstants {
            c2: 3.0 - 4.0 / (2.0 + a2),
            d: (2.0 + a2) * (2.0 + 3.0 * a2),
        }
    }
}

/// Local extrema of a BASN2 density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeReport {
    pub modes: Vec<f64>,
    pub antimode: Option<f64>,
    pub count: usize,
}

/// The standard BASN2(alpha) distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basn2 {
    alpha: AlphaParam,
    consts: NormConstants,
}

impl Basn2 {
    pub fn new(alpha: AlphaParam) -> Self {
        Basn2 {
            alpha,
            consts: NormConstants::new(alpha),
        }
    }

    /// Shorthand for `Basn2::new(AlphaParam::new(alpha)?)`.
    pub fn with_alpha(alpha: f64) -> Result<Self> {
        Ok(Self::new(AlphaParam::new(alpha)?))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    pub fn constants(&self) -> NormConstants {
        self.consts
    }

    /// `((1 - alpha z)^2 + 1)^2`, always `>= 1`.
    #[inline]
    fn skew_factor(&self, z: f64) -> f64 {
        let b = 1.0 - self.alpha() * z;
        let q = b * b + 1.0;
        q * q
    }

    pub fn pdf(&self, z: f64) -> f64 {
        self.skew_factor(z) * phi(z) / self.consts.d
    }

    pub fn ln_pdf(&self, z: f64) -> f64 {
        let b = 1.0 - self.alpha() * z;
        2.0 * (b * b + 1.0).ln() - self.consts.d.ln() + ln_phi(z)
    }

    /// Polynomial `g` with `F(z) = Phi(z) + g(z) phi(z) / d`.
    fn cdf_correction(&self, z: f64) -> f64 {
        let a = self.alpha();
        let a2 = a * a;
        a * (8.0 - 8.0 * a * z + 4.0 * a2 * (2.0 + z * z) - a2 * a * z * (3.0 + z * z))
    }

    pub fn cdf(&self, z: f64) -> f64 {
        if z.is_infinite() {
            return if z > 0.0 { 1.0 } else { 0.0 };
        }
        if z > 0.0 {
            return 1.0 - self.sf(z);
        }
        let v = norm_cdf(z) + self.cdf_correction(z) * phi(z) / self.consts.d;
        v.clamp(0.0, 1.0)
    }

    /// Survival function evaluated in complement form, accurate in the upper tail.
    pub fn sf(&self, z: f64) -> f64 {
        if z.is_infinite() {
            return if z > 0.0 { 0.0 } else { 1.0 };
        }
        if z <= 0.0 {
            // lower half: the complement is not small, go through the cdf
            let v = norm_cdf(z) + self.cdf_correction(z) * phi(z) / self.consts.d;
            return (1.0 - v).clamp(0.0, 1.0);
        }
        let v = norm_sf(z) - self.cdf_correction(z) * phi(z) / self.consts.d;
        v.clamp(0.0, 1.0)
    }

    pub fn mean(&self) -> f64 {
        let a = self.alpha();
        -4.0 * a / (2.0 + a * a)
    }

    pub fn variance(&self) -> f64 {
        let a2 = self.alpha() * self.alpha();
        (2.0 + 5.0 * a2) * (4.0 + 3.0 * a2 * a2) / ((2.0 + a2) * (2.0 + a2) * (2.0 + 3.0 * a2))
    }

    /// Inverse cdf, `|F(z) - p| <= 1e-10`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(BasnError::domain(format!("quantile needs 0 < p < 1, got {p}")));
        }
        let z0 = norm_quantile(p);
        let spread = self.mean().abs() + 6.0 * self.variance().sqrt();
        let mut lo = z0 - spread;
        let mut hi = z0 + spread;
        while self.cdf(lo) > p {
            lo -= spread;
        }
        while self.cdf(hi) < p {
            hi += spread;
        }
        // Newton steps kept inside the bracket, bisection otherwise.
        let mut z = z0.clamp(lo, hi);
        for _ in 0..200 {
            let r = self.cdf(z) - p;
            if r.abs() <= 1e-12 * p.min(1.0 - p).max(1e-2) {
                return Ok(z);
            }
            if r > 0.0 {
                hi = z;
            } else {
                lo = z;
            }
            let dens = self.pdf(z);
            let newton = z - r / dens;
            z = if dens > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 4.0 * f64::EPSILON * z.abs().max(1.0) {
                return Ok(z);
            }
        }
        Ok(z)
    }

    /// Sign-corrected derivative factor: `pdf'(z)` has the sign of
    /// `-(alpha^2 z^3 - 2 alpha z^2 + (2 - 4 alpha^2) z + 4 alpha)`.
    fn slope_sign_poly(&self, z: f64) -> f64 {
        let a = self.alpha();
        -(a * a * z * z * z - 2.0 * a * z * z + (2.0 - 4.0 * a * a) * z + 4.0 * a)
    }

    /// Locates the modes and antimode from the real roots of the stationarity cubic.
    pub fn mode_report(&self) -> ModeReport {
        let a = self.alpha();
        if a == 0.0 {
            return ModeReport {
                modes: vec![0.0],
                antimode: None,
                count: 1,
            };
        }
        let roots = real_cubic_roots(a * a, -2.0 * a, 2.0 - 4.0 * a * a, 4.0 * a);
        let mut modes = Vec::new();
        let mut antimode = None;
        for r in roots {
            let h = 1e-6 * r.abs().max(1.0);
            let left = self.slope_sign_poly(r - h);
            let right = self.slope_sign_poly(r + h);
            if left > 0.0 && right < 0.0 {
                modes.push(r);
            } else if left < 0.0 && right > 0.0 {
                antimode = Some(r);
            }
        }
        modes.sort_by(f64::total_cmp);
        ModeReport {
            count: modes.len(),
            modes,
            antimode,
        }
    }
}

/// Real roots of `c3 x^3 + c2 x^2 + c1 x + c0` (with `c3 != 0`), each polished
/// by Newton iterations; repeated roots are merged.
fn real_cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
    // depressed cubic t^3 + p t + q with x = t - a/3
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let s = disc.sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() + shift]
    } else if p == 0.0 {
        vec![shift]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    };
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let f = ((c3 * *r + c2) * *r + c1) * *r + c0;
            let df = (3.0 * c3 * *r + 2.0 * c2) * *r + c1;
            if df == 0.0 {
                break;
            }
            let step = f / df;
            *r -= step;
            if step.abs() <= 1e-15 * r.abs().max(1.0) {
                break;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * x.abs().max(1.0));
    roots
}

/// The symmetric component SCBASN2(alpha): even part of the BASN2 density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scbasn2 {
    alpha: AlphaParam,
    consts: NormConstants,
}

impl Scbasn2 {
    pub fn new(alpha: AlphaParam) -> Self {
        Scbasn2 {
            alpha,
            consts: NormConstants::new(alpha),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    fn even_poly(&self, z: f64) -> f64 {
        let a2 = self.alpha() * self.alpha();
        let z2 = z * z;
        a2 * a2 * z2 * z2 + 8.0 * a2 * z2 + 4.0
    }

    pub fn pdf(&self, z: f64) -> f64 {
        self.even_poly(z) * phi(z) / self.consts.d
    }

    pub fn ln_pdf(&self, z: f64) -> f64 {
        self.even_poly(z).ln() - self.consts.d.ln() + ln_phi(z)
    }

    fn cdf_correction(&self, z: f64) -> f64 {
        let a2 = self.alpha() * self.alpha();
        a2 * (a2 * z * z * z + 3.0 * a2 * z + 8.0 * z)
    }

    pub fn cdf(&self, z: f64) -> f64 {
        if z == 0.0 {
            return 0.5;
        }
        if z.is_infinite() {
            return if z > 0.0 { 1.0 } else { 0.0 };
        }
        if z > 0.0 {
            return 1.0 - self.sf(z);
        }
        (norm_cdf(z) - self.cdf_correction(z) * phi(z) / self.consts.d).clamp(0.0, 1.0)
    }

    pub fn sf(&self, z: f64) -> f64 {
        if z <= 0.0 || z.is_infinite() {
            return 1.0 - self.cdf(z);
        }
        (norm_sf(z) + self.cdf_correction(z) * phi(z) / self.consts.d).clamp(0.0, 1.0)
    }
}

/// The odd (asymmetric) part of the BASN2 density, `(-4a^3 z^3 - 8 a z) phi(z) / d`.
pub fn basn2_odd_part(z: f64, alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    (-4.0 * a * a * a * z * z * z - 8.0 * a * z) * phi(z) / NormConstants::new(alpha).d
}

/// `(alpha, mu, sigma)` for `Y = mu + sigma Z`, `Z ~ BASN2(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocScaleParams {
    pub alpha: f64,
    pub mu: f64,
    pub sigma: f64,
}

impl LocScaleParams {
    pub fn new(alpha: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(alpha.is_finite() && mu.is_finite() && sigma.is_finite()) {
            return Err(BasnError::domain("location-scale parameters must be finite"));
        }
        if sigma <= 0.0 {
            return Err(BasnError::domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(LocScaleParams { alpha, mu, sigma })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.mu, self.sigma]
    }
}

/// BASN2(alpha, mu, sigma).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocScaleBasn2 {
    params: LocScaleParams,
    standard: Basn2,
}

impl LocScaleBasn2 {
    pub fn new(params: LocScaleParams) -> Self {
        LocScaleBasn2 {
            params,
            standard: Basn2::new(AlphaParam(params.alpha)),
        }
    }

    pub fn from_parts(alpha: f64, mu: f64, sigma: f64) -> Result<Self> {
        Ok(Self::new(LocScaleParams::new(alpha, mu, sigma)?))
    }

    pub fn params(&self) -> LocScaleParams {
        self.params
    }

    #[inline]
    fn standardize(&self, y: f64) -> f64 {
        (y - self.params.mu) / self.params.sigma
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.standard.pdf(self.standardize(y)) / self.params.sigma
    }

    pub fn ln_pdf(&self, y: f64) -> f64 {
        self.standard.ln_pdf(self.standardize(y)) - self.params.sigma.ln()
    }

    pub fn cdf(&self, y: f64) -> f64 {
        self.standard.cdf(self.standardize(y))
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.params.mu + self.params.sigma * self.standard.quantile(p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, quad, Tolerance};

    fn basn(a: f64) -> Basn2 {
        Basn2::with_alpha(a).unwrap()
    }

    #[test]
    fn bn_examples() {
        assert!((bn_pdf(0.0, BnOrder::new(0).unwrap()) - 0.398_942_3).abs() < 1e-7);
        assert_eq!(bn_pdf(0.0, BnOrder::new(4).unwrap()), 0.0);
        assert!((bn_pdf(1.0, BnOrder::new(2).unwrap()) - 0.241_970_7).abs() < 1e-7);
        for n in [0, 2, 4, 8, 12] {
            let ord = BnOrder::new(n).unwrap();
            let mass = quad(|z| bn_pdf(z, ord), f64::NEG_INFINITY, f64::INFINITY).unwrap();
            assert!((mass - 1.0).abs() < 1e-11, "BN({n}) mass {mass}");
        }
    }

    #[test]
    fn bn_order_rejects_odd_negative_and_large() {
        assert!(BnOrder::new(3).is_err());
        assert!(BnOrder::new(-2).is_err());
        assert!(BnOrder::new(34).is_err());
        assert!(BnOrder::new(32).is_ok());
    }

    #[test]
    fn bn4_cdf_values() {
        assert!((bn4_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((bn4_cdf(40.0) - 1.0).abs() < 1e-15);
        let oracle = quad(|z| bn_pdf(z, BnOrder::new(4).unwrap()), f64::NEG_INFINITY, 1.0).unwrap();
        assert!((bn4_cdf(1.0) - oracle).abs() < 1e-12);
        assert!((bn4_cdf(1.0) - 0.518_717_113).abs() < 1e-9);
    }

    #[test]
    fn alpha_rejects_non_finite() {
        assert!(AlphaParam::new(f64::NAN).is_err());
        assert!(AlphaParam::new(f64::INFINITY).is_err());
    }

    #[test]
    fn norm_constants_identity() {
        for a in [0.0, 0.3, -1.0, 2.5, 40.0] {
            let c = NormConstants::new(AlphaParam::new(a).unwrap());
            let a2: f64 = a * a;
            let poly = 4.0 + 8.0 * a2 + 3.0 * a2 * a2;
            assert!((c.d - poly).abs() <= 1e-15 * poly);
            assert!((c.d - c.c2 * (2.0 + a2).powi(2)).abs() <= 1e-12 * poly);
            assert!(c.c2 >= 1.0 && c.c2 < 3.0 && c.d >= 4.0);
        }
    }

    #[test]
    fn pdf_examples() {
        assert!((basn(0.0).pdf(0.0) - 0.398_942_3).abs() < 1e-7);
        assert!((basn(1.0).pdf(1.0) - 0.016_131_4).abs() < 1e-7);
        assert!((basn(-1.0).pdf(-1.0) - 0.016_131_4).abs() < 1e-7);
    }

    #[test]
    fn logpdf_examples() {
        assert!((basn(0.0).ln_pdf(0.0) + 0.918_938_5).abs() < 1e-7);
        assert!((basn(1.0).ln_pdf(1.0) + 4.127_0).abs() < 1e-4);
        assert!((basn(0.0).ln_pdf(10.0) + 50.918_9).abs() < 1e-4);
        assert!(basn(3.0).ln_pdf(60.0).is_finite());
    }

    #[test]
    fn cdf_examples_against_quadrature() {
        assert_eq!(basn(0.0).cdf(0.0), 0.5);
        let d = basn(1.0);
        let q0 = quad(|z| d.pdf(z), f64::NEG_INFINITY, 0.0).unwrap();
        let q1 = quad(|z| d.pdf(z), f64::NEG_INFINITY, 1.0).unwrap();
        assert!((d.cdf(0.0) - q0).abs() < 1e-12);
        assert!((d.cdf(1.0) - q1).abs() < 1e-12);
        assert!((d.cdf(0.0) - 0.925_54).abs() < 1e-5);
        assert!((d.cdf(1.0) - 0.970_40).abs() < 1e-5);
    }

    #[test]
    fn tails_are_accurate() {
        let d = basn(-0.7);
        let tol = Tolerance::new(0.0, 1e-13);
        let lower = integrate(|z| d.pdf(z), f64::NEG_INFINITY, -9.0, tol).unwrap().value;
        assert!((d.cdf(-9.0) - lower).abs() / lower < 1e-9);
        let upper = integrate(|z| d.pdf(z), 9.0, f64::INFINITY, tol).unwrap().value;
        assert!((d.sf(9.0) - upper).abs() / upper < 1e-9);
    }

    #[test]
    fn quantile_examples() {
        assert!(basn(0.0).quantile(0.5).unwrap().abs() < 1e-10);
        let d = basn(1.0);
        assert!((d.quantile(d.cdf(1.0)).unwrap() - 1.0).abs() < 1e-8);
        assert!(d.quantile(0.925_538_432_428_194_9).unwrap().abs() < 1e-8);
        assert!(d.quantile(0.0).is_err());
        assert!(d.quantile(1.0).is_err());
        assert!(d.quantile(f64::NAN).is_err());
        for p in [1e-12, 1e-6, 0.01, 0.3, 0.999_999] {
            let z = basn(-2.5).quantile(p).unwrap();
            assert!((basn(-2.5).cdf(z) - p).abs() <= 1e-10);
        }
    }

    #[test]
    fn scbasn2_examples() {
        let s0 = Scbasn2::new(AlphaParam::new(0.0).unwrap());
        for z in [-2.0, 0.0, 1.3] {
            assert!((s0.pdf(z) - phi(z)).abs() < 1e-16);
        }
        let s = Scbasn2::new(AlphaParam::new(1.0).unwrap());
        assert!((s.pdf(1.0) - 13.0 * phi(1.0) / 15.0).abs() < 1e-16);
        assert!((s.pdf(1.0) - 0.209_707_96).abs() < 1e-8);
        assert_eq!(s.pdf(-1.0), s.pdf(1.0));
        assert_eq!(s.cdf(0.0), 0.5);
        let oracle = quad(|z| s.pdf(z), f64::NEG_INFINITY, 1.0).unwrap();
        assert!((s.cdf(1.0) - oracle).abs() < 1e-12);
        assert!((s.cdf(1.0) - 0.647_768_166).abs() < 1e-8);
        assert!((s.cdf(40.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mode_examples() {
        let r = basn(0.0).mode_report();
        assert_eq!((r.count, r.modes.clone()), (1, vec![0.0]));
        assert_eq!(basn(2.0).mode_report().count, 2);
        assert_eq!(basn(0.5).mode_report().count, 1);
        let r = basn(2.0).mode_report();
        let am = r.antimode.unwrap();
        assert!(r.modes[0] < am && am < r.modes[1]);
    }

    #[test]
    fn locscale_examples() {
        let d = LocScaleBasn2::from_parts(0.0, 3.0, 2.0).unwrap();
        assert!((d.pdf(3.0) - 0.199_471_1).abs() < 1e-7);
        let d = LocScaleBasn2::from_parts(1.0, -2.0, 3.0).unwrap();
        assert!((d.pdf(1.0) - 0.005_377_1).abs() < 1e-7);
        let d = LocScaleBasn2::from_parts(1.0, 0.7, 1.0).unwrap();
        assert!((d.cdf(0.7) - 0.925_54).abs() < 1e-5);
        let d = LocScaleBasn2::from_parts(1.0, 10.0, 2.0).unwrap();
        let y = d.quantile(0.3).unwrap();
        assert!((d.cdf(y) - 0.3).abs() < 1e-10);
        assert!(LocScaleParams::new(0.0, 0.0, 0.0).is_err());
        assert!(LocScaleParams::new(0.0, 0.0, -1.0).is_err());
    }
}
