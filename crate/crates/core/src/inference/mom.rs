//! Method-of-moments estimation.
//!
//! For a trial `alpha`, `sigma^2 = (m2 - m1^2) / Var Z` and
//! `mu = m1 - sigma E[Z]` match the first two moments; `alpha` is then a
//! root of the third-moment residual `m3 - E[(mu + sigma Z)^3]`, found by a
//! sign scan over `[-ALPHA_RANGE, ALPHA_RANGE]` plus bisection.

use serde::Serialize;

use super::dataset::{Dataset, SampleMoments};
use super::fit::{basn2_named, FitResult, Method, Model};
use super::likelihood::basn2_loglik;
use crate::density::{AlphaParam, LocScaleParams};
use crate::error::{BasnError, Result};
use crate::moments::{raw_moment, MomentOrder};

pub const ALPHA_RANGE: f64 = 50.0;
const SCAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomCandidate {
    pub params: LocScaleParams,
    /// Log-likelihood of the candidate when data were supplied.
    pub loglik: Option<f64>,
}

struct Matched {
    mu: f64,
    sigma: f64,
    residual: f64,
}

fn z_moments(alpha: f64) -> [f64; 3] {
    let a = AlphaParam::new(alpha).expect("finite alpha");
    let m = |k| raw_moment(MomentOrder::new(k).expect("order <= 16"), a);
    [m(1), m(2), m(3)]
}

fn matched(alpha: f64, m: &SampleMoments) -> Matched {
    let [e1, e2, e3] = z_moments(alpha);
    let sigma = (m.variance() / (e2 - e1 * e1)).sqrt();
    let mu = m.m1 - sigma * e1;
    // m3 - E[(mu + sigma Z)^3] written through central moments: the mean and
    // variance already agree, so only the third central moments differ
    let c3_sample = m.m3 - 3.0 * m.m1 * m.m2 + 2.0 * m.m1.powi(3);
    let k3 = e3 - 3.0 * e1 * e2 + 2.0 * e1.powi(3);
    Matched {
        mu,
        sigma,
        residual: c3_sample - sigma.powi(3) * k3,
    }
}

fn bisect(m: &SampleMoments, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = matched(lo, m).residual;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = matched(mid, m).residual;
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every moment-matching solution in range. With `data`, each candidate
/// carries its log-likelihood.
pub fn mom_candidates(m: &SampleMoments, data: Option<&[f64]>) -> Result<Vec<MomCandidate>> {
    if !(m.variance() > 0.0) {
        return Err(BasnError::estimation("m2 - m1^2 must be positive"));
    }
    let steps = (2.0 * ALPHA_RANGE / SCAN_STEP).round() as i64;
    let grid = |i: i64| -ALPHA_RANGE + i as f64 * SCAN_STEP;
    let mut roots = Vec::new();
    let mut prev = matched(grid(0), m).residual;
    if prev == 0.0 {
        roots.push(grid(0));
    }
    for i in 1..=steps {
        let a = grid(i);
        let r = matched(a, m).residual;
        if r == 0.0 {
            roots.push(a);
        } else if prev != 0.0 && (r > 0.0) != (prev > 0.0) {
            roots.push(bisect(m, grid(i - 1), a));
        }
        prev = r;
    }

    let mut out = Vec::new();
    for alpha in roots {
        let mt = matched(alpha, m);
        if !(mt.sigma > 0.0 && mt.sigma.is_finite()) {
            continue;
        }
        let params = LocScaleParams::new(alpha, mt.mu, mt.sigma)?;
        out.push(MomCandidate {
            params,
            loglik: data.map(|y| basn2_loglik(y, &params)),
        });
    }
    if out.is_empty() {
        let c3 = m.m3 - 3.0 * m.m1 * m.m2 + 2.0 * m.m1.powi(3);
        return Err(BasnError::estimation(format!(
            "no moment solution for alpha in [-{ALPHA_RANGE}, {ALPHA_RANGE}]: sample skewness {:.6} is outside the attainable range",
            c3 / m.variance().powf(1.5)
        )));
    }
    Ok(out)
}

/// Moment estimate; among several roots the one with the highest likelihood wins.
pub fn mom_fit(data: &Dataset) -> Result<FitResult> {
    let m = data.moments()?;
    let candidates = mom_candidates(&m, Some(data.values()))?;
    let best = candidates
        .iter()
        .max_by(|a, b| a.loglik.unwrap_or(f64::NEG_INFINITY).total_cmp(&b.loglik.unwrap_or(f64::NEG_INFINITY)))
        .copied()
        .expect("non-empty");
    let mut fit = FitResult::build(
        Model::Basn2,
        basn2_named(&best.params),
        best.loglik.unwrap_or(f64::NEG_INFINITY),
        data.len(),
        Method::Mom,
    );
    for c in candidates.iter().filter(|c| c.params != best.params) {
        fit.notes.push(format!(
            "alternative moment root alpha={:.9} mu={:.9} sigma={:.9} loglik={:.6}",
            c.params.alpha,
            c.params.mu,
            c.params.sigma,
            c.loglik.unwrap_or(f64::NAN)
        ));
    }
    Ok(fit)
}

/// Population moments of `mu + sigma Z` as a [`SampleMoments`] value.
pub fn exact_moments(p: &LocScaleParams) -> SampleMoments {
    let [e1, e2, e3] = z_moments(p.alpha);
    let (mu, s) = (p.mu, p.sigma);
    SampleMoments {
        m1: mu + s * e1,
        m2: mu * mu + 2.0 * mu * s * e1 + s * s * e2,
        m3: mu.powi(3) + 3.0 * mu * mu * s * e1 + 3.0 * mu * s * s * e2 + s.powi(3) * e3,
    }
}
