//! Raw moments, shape summaries, moment generating functions and the
//! extrema of the mean/variance/skewness/kurtosis curves over alpha.

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::density::{AlphaParam, NormConstants};
use crate::error::{BasnError, Result};

/// Moment order, bounded so `(n + 4)!` stays exactly representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentOrder(u32);

impl MomentOrder {
    pub const MAX: u32 = 16;

    pub fn new(n: u32) -> Result<Self> {
        if n > Self::MAX {
            return Err(BasnError::domain(format!(
                "moment order must be <= {}, got {n}",
                Self::MAX
            )));
        }
        Ok(MomentOrder(n))
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `E[Z^n]` for `Z ~ BASN2(alpha)` from the factorial form.
pub fn raw_moment(n: MomentOrder, alpha: AlphaParam) -> f64 {
    let n = n.value();
    let a = alpha.value();
    let a2 = a * a;
    let d = NormConstants::new(alpha).d;
    if n % 2 == 0 {
        let term = |k: u32| factorial(k) / factorial(k / 2);
        let scale = 2f64.powf(-((n + 4) as f64) / 2.0);
        scale * (a2 * a2 * term(n + 4) + 16.0 * a2 * term(n + 2) + 16.0 * term(n)) / d
    } else {
        let term = |k: u32| factorial(k) / factorial(k / 2);
        let scale = 2f64.powf((1.0 - n as f64) / 2.0);
        -scale * a * (a2 * term(n + 3) + 4.0 * term(n + 1)) / d
    }
}

/// The same moments through the Gamma-function form.
pub fn raw_moment_gamma_form(n: MomentOrder, alpha: AlphaParam) -> f64 {
    let n = n.value() as f64;
    let a = alpha.value();
    let a2 = a * a;
    let d = NormConstants::new(alpha).d;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    if n as u32 % 2 == 0 {
        2f64.powf(n / 2.0) * (4.0 + (1.0 + n) * a2 * (8.0 + (3.0 + n) * a2)) * gamma((1.0 + n) / 2.0)
            / (sqrt_pi * d)
    } else {
        -2f64.powf((5.0 + n) / 2.0) * a * (2.0 + (2.0 + n) * a2) * gamma(1.0 + n / 2.0) / (sqrt_pi * d)
    }
}

/// First four moments summarized Pearson-style.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeSummary {
    pub mean: f64,
    pub variance: f64,
    /// Squared skewness `mu3^2 / mu2^3`.
    pub beta1: f64,
    /// Kurtosis `mu4 / mu2^2`.
    pub beta2: f64,
    /// Signed skewness `mu3 / mu2^(3/2)`.
    pub gamma1: f64,
}

pub fn mean_closed_form(alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    -4.0 * a / (2.0 + a * a)
}

pub fn variance_closed_form(alpha: AlphaParam) -> f64 {
    let a2 = alpha.value().powi(2);
    (2.0 + 5.0 * a2) * (4.0 + 3.0 * a2 * a2) / ((2.0 + a2).powi(2) * (2.0 + 3.0 * a2))
}

fn skew_denominator(a2: f64) -> f64 {
    8.0 + 20.0 * a2 + 6.0 * a2 * a2 + 15.0 * a2 * a2 * a2
}

pub fn beta1_closed_form(alpha: AlphaParam) -> f64 {
    let a2 = alpha.value().powi(2);
    let a6 = a2 * a2 * a2;
    64.0 * a6 * (2.0 + 3.0 * a2) * (4.0 + 15.0 * a2 * a2).powi(2) / skew_denominator(a2).powi(3)
}

pub fn beta2_closed_form(alpha: AlphaParam) -> f64 {
    let a2 = alpha.value().powi(2);
    let a4 = a2 * a2;
    let poly = 32.0 + 112.0 * a2 + 144.0 * a4 + 216.0 * a4 * a2 + 410.0 * a4 * a4 + 35.0 * a4 * a4 * a2;
    3.0 * (2.0 + 3.0 * a2) * poly / skew_denominator(a2).powi(2)
}

/// Mean, variance, beta1, beta2 assembled from the raw moments.
pub fn shape_summary(alpha: AlphaParam) -> ShapeSummary {
    let m = |k| raw_moment(MomentOrder(k), alpha);
    let (m1, m2, m3, m4) = (m(1), m(2), m(3), m(4));
    let mu2 = m2 - m1 * m1;
    let mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3);
    let mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4);
    ShapeSummary {
        mean: m1,
        variance: mu2,
        beta1: mu3 * mu3 / mu2.powi(3),
        beta2: mu4 / (mu2 * mu2),
        gamma1: mu3 / mu2.powf(1.5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeQuantity {
    Mean,
    Variance,
    Beta1,
    Beta2,
}

impl ShapeQuantity {
    /// Closed-form value as a function of alpha.
    pub fn eval(self, alpha: f64) -> f64 {
        let a = AlphaParam::new(alpha).expect("finite alpha");
        match self {
            ShapeQuantity::Mean => mean_closed_form(a),
            ShapeQuantity::Variance => variance_closed_form(a),
            ShapeQuantity::Beta1 => beta1_closed_form(a),
            ShapeQuantity::Beta2 => beta2_closed_form(a),
        }
    }
}

/// Extremes of a shape quantity over `alpha in [-ALPHA_LIMIT, ALPHA_LIMIT]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalBounds {
    pub quantity: ShapeQuantity,
    pub min: f64,
    pub argmin: f64,
    /// `false` when the infimum is only approached as `|alpha| -> inf`.
    pub min_attained: bool,
    pub max: f64,
    pub argmax: f64,
    pub max_attained: bool,
}

pub const ALPHA_LIMIT: f64 = 1e6;

fn alpha_scan_grid() -> Vec<f64> {
    // log-spaced magnitudes in [1e-4, 1e6], mirrored, plus zero
    let per_side = 4000;
    let mags: Vec<f64> = (0..=per_side)
        .map(|i| 10f64.powf(-4.0 + 10.0 * i as f64 / per_side as f64))
        .collect();
    let mut grid: Vec<f64> = mags.iter().rev().map(|m| -m).collect();
    grid.push(0.0);
    grid.extend(mags);
    grid
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-14 * (lo.abs() + hi.abs()).max(1e-10) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Numerically locates the extremes of the closed-form curve: a coarse
/// log-spaced scan, then golden-section polish around the best grid point.
pub fn extremal_bounds(quantity: ShapeQuantity) -> ExtremalBounds {
    let grid = alpha_scan_grid();
    let values: Vec<f64> = grid.iter().map(|&a| quantity.eval(a)).collect();
    let last = grid.len() - 1;

    let polish = |idx: usize, sign: f64| -> (f64, f64, bool) {
        if idx == 0 || idx == last {
            return (values[idx], grid[idx], false);
        }
        let arg = golden_max(|a| sign * quantity.eval(a), grid[idx - 1], grid[idx + 1]);
        let v = quantity.eval(arg);
        // keep the grid value if polishing did not improve it
        if sign * v >= sign * values[idx] {
            (v, arg, true)
        } else {
            (values[idx], grid[idx], true)
        }
    };

    let imax = (0..grid.len())
        .max_by(|&i, &j| values[i].total_cmp(&values[j]).then(j.cmp(&i)))
        .unwrap();
    let imin = (0..grid.len())
        .min_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)))
        .unwrap();
    let (max, argmax, max_attained) = polish(imax, 1.0);
    let (min, argmin, min_attained) = polish(imin, -1.0);
    ExtremalBounds {
        quantity,
        min,
        argmin,
        min_attained,
        max,
        argmax,
        max_attained,
    }
}

/// The mgf with the coefficient of the `alpha^3 t` term left free, so the
/// derived value (-12) and alternatives can be compared.
pub fn basn2_mgf_with_alpha3_t_coefficient(t: f64, alpha: AlphaParam, coeff: f64) -> f64 {
    let a = alpha.value();
    let (a2, t2) = (a * a, t * t);
    let poly = a2 * a2 * (t2 * t2 + 6.0 * t2 + 3.0) - 4.0 * a2 * a * t2 * t + coeff * a2 * a * t
        + 8.0 * a2 * (t2 + 1.0)
        - 8.0 * a * t
        + 4.0;
    (0.5 * t2).exp() * poly / NormConstants::new(alpha).d
}

pub const MGF_T_LIMIT: f64 = 40.0;

fn check_t(t: f64) -> Result<()> {
    if !(t.abs() <= MGF_T_LIMIT) {
        return Err(BasnError::domain(format!("|t| must be <= {MGF_T_LIMIT}, got {t}")));
    }
    Ok(())
}

fn finite_or_overflow(v: f64, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(BasnError::domain(format!("mgf overflows at t = {t}")))
    }
}

/// Moment generating function of BASN2(alpha).
pub fn basn2_mgf(t: f64, alpha: AlphaParam) -> Result<f64> {
    check_t(t)?;
    finite_or_overflow(basn2_mgf_with_alpha3_t_coefficient(t, alpha, -12.0), t)
}

/// Moment generating function of the symmetric component SCBASN2(alpha).
pub fn scbasn2_mgf(t: f64, alpha: AlphaParam) -> Result<f64> {
    check_t(t)?;
    let a2 = alpha.value().powi(2);
    let t2 = t * t;
    let poly = a2 * a2 * (t2 * t2 + 6.0 * t2 + 3.0) + 8.0 * a2 * (t2 + 1.0) + 4.0;
    finite_or_overflow((0.5 * t2).exp() * poly / NormConstants::new(alpha).d, t)
}
