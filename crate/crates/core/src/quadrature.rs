//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Infinite limits are mapped onto finite ones (`x = t / (1 - t^2)` for the
//! whole line, `x = a + t / (1 - t)` for half lines). Used as the numerical
//! oracle for normalizing constants, moments and cdfs throughout the crate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{BasnError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-13,
            rel: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance {
            abs,
            rel,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    // |K15 - G7| is pessimistic for smooth integrands, which is what we want
    // from an oracle.
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

fn adaptive_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    let (v, e) = kronrod15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, error: e });
    let mut total = v;
    let mut total_err = e;
    let mut evaluations = 15;
    while total_err > tol.abs.max(tol.rel * total.abs()) {
        if heap.len() >= tol.max_intervals {
            return Err(BasnError::Convergence(format!(
                "quadrature on [{a}, {b}] hit {} intervals with error {total_err:e}",
                tol.max_intervals
            )));
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval collapsed to machine resolution; accept what we have
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod15(f, worst.a, mid);
        let (v2, e2) = kronrod15(f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // re-sum to shed accumulated rounding from the running updates
    let value = heap.iter().map(|s| s.value).sum();
    let abs_error = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult {
        value,
        abs_error,
        evaluations,
    })
}

/// Integrate `f` over `[a, b]`; either limit may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult> {
    if a.is_nan() || b.is_nan() {
        return Err(BasnError::domain("NaN integration limit"));
    }
    if a > b {
        let r = integrate(f, b, a, tol)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive_finite(&f, a, b, tol),
        (false, false) => {
            let g = |t: f64| {
                let d = 1.0 - t * t;
                if d <= 0.0 {
                    return 0.0;
                }
                let x = t / d;
                let v = f(x) * (1.0 + t * t) / (d * d);
                if v.is_finite() { v } else { 0.0 }
            };
            adaptive_finite(&g, -1.0, 1.0, tol)
        }
        (true, false) => {
            let g = |t: f64| {
                let d = 1.0 - t;
                if d <= 0.0 {
                    return 0.0;
                }
                let v = f(a + t / d) / (d * d);
                if v.is_finite() { v } else { 0.0 }
            };
            adaptive_finite(&g, 0.0, 1.0, tol)
        }
        (false, true) => {
            let g = |t: f64| {
                let d = 1.0 - t;
                if d <= 0.0 {
                    return 0.0;
                }
                let v = f(b - t / d) / (d * d);
                if v.is_finite() { v } else { 0.0 }
            };
            adaptive_finite(&g, 0.0, 1.0, tol)
        }
    }
}

/// Convenience wrapper returning only the value with the default tolerance.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    integrate(f, a, b, Tolerance::default()).map(|r| r.value)
}

/// Iterated 2-D integration over the rectangle `[x0, x1] x [y0, y1]`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    tol: Tolerance,
) -> Result<QuadResult> {
    let inner_tol = Tolerance {
        abs: tol.abs * 1e-2,
        rel: tol.rel * 1e-2,
        ..tol
    };
    let failure = std::cell::Cell::new(None);
    let evals = std::cell::Cell::new(0usize);
    let outer = integrate(
        |x| match integrate(|y| f(x, y), y0, y1, inner_tol) {
            Ok(r) => {
                evals.set(evals.get() + r.evaluations);
                r.value
            }
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        x0,
        x1,
        tol,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(QuadResult {
        evaluations: evals.get(),
        ..outer
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::phi;

    #[test]
    fn polynomial_is_exact() {
        let v = quad(|x| x.powi(6) - 2.0 * x + 1.0, 0.0, 2.0).unwrap();
        assert!((v - (128.0 / 7.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_moments_over_the_line() {
        assert!((quad(phi, f64::NEG_INFINITY, f64::INFINITY).unwrap() - 1.0).abs() < 1e-13);
        let m4 = quad(|z| z.powi(4) * phi(z), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!((m4 - 3.0).abs() < 1e-11);
        let half = quad(phi, 0.0, f64::INFINITY).unwrap();
        assert!((half - 0.5).abs() < 1e-13);
        let lower = quad(phi, f64::NEG_INFINITY, -1.0).unwrap();
        assert!((lower - 0.158_655_253_931_457_05).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = quad(|x| x.exp(), 1.0, 0.0).unwrap();
        assert!((v + (std::f64::consts::E - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn peaked_integrand_converges() {
        let v = quad(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() / exact < 1e-10);
    }

    #[test]
    fn two_dimensional_gaussian() {
        let r = integrate_2d(
            |x, y| phi(x) * phi(y) * (1.0 + x * y),
            (-12.0, 12.0),
            (-12.0, 12.0),
            Tolerance::new(1e-12, 1e-11),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
