//! Maximum likelihood for location-scale BASN2: multi-start Nelder-Mead on
//! `(alpha, mu, ln sigma)` followed by a Newton polish with the analytic
//! score and Hessian.

use super::dataset::Dataset;
use super::fit::{basn2_named, FitResult, Method, Model};
use super::likelihood::{basn2_loglik, diagnostics, observed_info, score, solve_pd, vcov};
use super::mom::mom_fit;
use super::optim::minimize_from_starts;
use crate::density::{AlphaParam, LocScaleParams};
use crate::error::{BasnError, Result};
use crate::moments::{mean_closed_form, variance_closed_form};

/// Fixed alpha values used as extra starting points.
pub const START_ALPHAS: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
/// `||score|| / n` below which a fit counts as converged.
pub const SCORE_TOLERANCE: f64 = 1e-6;

const SCREEN_ITER: usize = 300;
const KEEP: usize = 3;

fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn to_params(x: &[f64]) -> Option<LocScaleParams> {
    LocScaleParams::new(x[0], x[1], x[2].exp()).ok()
}

/// Newton ascent with step halving; returns the polished point and the
/// number of accepted steps.
fn newton_polish(y: &[f64], start: LocScaleParams) -> (LocScaleParams, usize) {
    let mut p = start;
    let mut ll = basn2_loglik(y, &p);
    let mut steps = 0;
    for _ in 0..100 {
        let g = score(y, &p);
        let gn = norm(g);
        if gn / (y.len() as f64) < 1e-13 {
            break;
        }
        let Some(dir) = solve_pd(&observed_info(y, &p), g) else {
            break;
        };
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = LocScaleParams::new(p.alpha + t * dir[0], p.mu + t * dir[1], p.sigma + t * dir[2]);
            if let Ok(c) = cand {
                let lc = basn2_loglik(y, &c);
                if lc > ll || (lc == ll && norm(score(y, &c)) < gn) {
                    accepted = Some((c, lc));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((c, lc)) => {
                p = c;
                ll = lc;
                steps += 1;
            }
            None => break,
        }
    }
    (p, steps)
}

/// Starting points: the caller's guess, the moment estimate, and a fixed
/// alpha grid with `(mu, sigma)` either at the sample mean and sd or
/// adjusted so the first two moments match.
fn starting_points(data: &Dataset, init: Option<LocScaleParams>) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    let m = data.moments()?;
    let sd = m.sd();
    let mut notes = Vec::new();
    let mut starts = Vec::new();
    let mut push = |p: [f64; 3]| starts.push(vec![p[0], p[1], p[2].ln()]);
    if let Some(p) = init {
        push(p.as_array());
    }
    match mom_fit(data).map(|f| f.basn2_params()) {
        Ok(Some(p)) => push(p.as_array()),
        Ok(None) => {}
        Err(e) => notes.push(format!("moment start unavailable: {e}")),
    }
    for a in START_ALPHAS {
        let alpha = AlphaParam::new(a)?;
        push([a, m.m1, sd]);
        let s = sd / variance_closed_form(alpha).sqrt();
        push([a, m.m1 - s * mean_closed_form(alpha), s]);
    }
    Ok((starts, notes))
}

pub fn mle_fit(data: &Dataset, init: Option<LocScaleParams>) -> Result<FitResult> {
    let y = data.values();
    let n = y.len() as f64;
    let (starts, mut notes) = starting_points(data, init)?;
    let sd = data.moments()?.sd();

    let objective = |x: &[f64]| match to_params(x) {
        Some(p) => -basn2_loglik(y, &p) / n,
        None => f64::INFINITY,
    };
    let best = minimize_from_starts(&objective, &starts, &[0.25, 0.1 * sd, 0.1], SCREEN_ITER, KEEP)
        .ok_or_else(|| BasnError::Convergence("no starting point".into()))?;
    let simplex_point = to_params(&best.x)
        .ok_or_else(|| BasnError::Convergence(format!("simplex ended at invalid point {:?}", best.x)))?;

    let (p, newton_steps) = newton_polish(y, simplex_point);
    let loglik = basn2_loglik(y, &p);
    let score_norm = norm(score(y, &p)) / n;

    let mut fit = FitResult::build(Model::Basn2, basn2_named(&p), loglik, data.len(), Method::Mle);
    fit.iterations = best.iterations + newton_steps;
    fit.score_norm = Some(score_norm);
    fit.converged = best.converged && score_norm < SCORE_TOLERANCE;
    if !best.converged {
        notes.push("simplex did not reach its diameter tolerance within budget".into());
    }
    if score_norm >= SCORE_TOLERANCE {
        notes.push(format!("score norm / n = {score_norm:e} above {SCORE_TOLERANCE:e}"));
    }
    let info = observed_info(y, &p);
    match vcov(&info) {
        Ok(v) => fit.vcov = Some(v),
        Err(e) => {
            let d = diagnostics(&info);
            notes.push(format!(
                "observed information not invertible ({e}); eigenvalues in [{:e}, {:e}]",
                d.min_eigenvalue, d.max_eigenvalue
            ));
        }
    }
    fit.notes = notes;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::likelihood::normal_loglik;
    use crate::sampling::{sample_locscale, SampleConfig};

    fn simulated(a: f64, mu: f64, s: f64, n: usize, seed: u64) -> Dataset {
        let p = LocScaleParams::new(a, mu, s).unwrap();
        Dataset::new("sim", sample_locscale(p, SampleConfig::new(n, seed).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn recovers_simulated_parameters() {
        let d = simulated(1.5, 2.0, 0.8, 3000, 11);
        let f = mle_fit(&d, None).unwrap();
        assert!(f.converged, "{:?}", f.notes);
        let p = f.basn2_params().unwrap();
        assert!((p.alpha - 1.5).abs() < 0.25, "{p:?}");
        assert!((p.mu - 2.0).abs() < 0.2, "{p:?}");
        assert!((p.sigma - 0.8).abs() < 0.1, "{p:?}");
        assert!(f.score_norm.unwrap() < SCORE_TOLERANCE);
        assert!(f.vcov.is_some());
    }

    #[test]
    fn nests_the_normal() {
        let d = simulated(0.0, -1.0, 2.0, 400, 5);
        let f = mle_fit(&d, None).unwrap();
        let m = d.moments().unwrap();
        let normal = normal_loglik(d.values(), m.m1, m.sd());
        assert!(f.loglik >= normal - 1e-9);
        assert!(2.0 * (f.loglik - normal) < 20.0);
    }

    #[test]
    fn equivariance() {
        let d = simulated(-0.9, 0.0, 1.0, 500, 3);
        let (a, b) = (10.0, 3.0);
        let shifted = Dataset::new("t", d.values().iter().map(|v| a + b * v).collect()).unwrap();
        let f0 = mle_fit(&d, None).unwrap();
        let f1 = mle_fit(&shifted, None).unwrap();
        let (p0, p1) = (f0.basn2_params().unwrap(), f1.basn2_params().unwrap());
        assert!((p0.alpha - p1.alpha).abs() < 1e-6);
        assert!((a + b * p0.mu - p1.mu).abs() < 1e-5);
        assert!((b * p0.sigma - p1.sigma).abs() < 1e-5);
        let n = d.len() as f64;
        assert!((f1.loglik - (f0.loglik - n * b.ln())).abs() < 1e-6);
    }
}
