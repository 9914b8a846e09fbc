//! Comparison models: normal, Laplace, logistic, skew normal (SN) and
//! alpha skew normal (ASN).

use super::dataset::Dataset;
use super::fit::{FitResult, Method, Model, Params};
use super::likelihood::normal_loglik;
use super::mle::mle_fit;
use super::optim::minimize_from_starts;
use crate::error::{BasnError, Result};
use crate::special::{compensated_sum, ln_phi, norm_cdf, SQRT_2_OVER_PI};

pub fn laplace_loglik(values: &[f64], loc: f64, scale: f64) -> f64 {
    compensated_sum(values.iter().map(|&y| -(2.0 * scale).ln() - (y - loc).abs() / scale))
}

pub fn logistic_loglik(values: &[f64], loc: f64, scale: f64) -> f64 {
    compensated_sum(values.iter().map(|&y| {
        let u = -((y - loc) / scale).abs();
        // symmetric in u, so use the non-positive branch
        u - 2.0 * u.exp().ln_1p() - scale.ln()
    }))
}

/// `2 phi(z) Phi(lambda z) / sigma`.
pub fn sn_loglik(values: &[f64], lambda: f64, mu: f64, sigma: f64) -> f64 {
    compensated_sum(values.iter().map(|&y| {
        let z = (y - mu) / sigma;
        std::f64::consts::LN_2 + ln_phi(z) + norm_cdf(lambda * z).ln() - sigma.ln()
    }))
}

/// `((1 - alpha z)^2 + 1) phi(z) / ((2 + alpha^2) sigma)`.
pub fn asn_loglik(values: &[f64], alpha: f64, mu: f64, sigma: f64) -> f64 {
    let c = -(2.0 + alpha * alpha).ln() - sigma.ln();
    compensated_sum(values.iter().map(|&y| {
        let z = (y - mu) / sigma;
        let b = 1.0 - alpha * z;
        (b * b + 1.0).ln() + ln_phi(z) + c
    }))
}

fn simplex_fit<F: Fn(&[f64]) -> f64>(
    model: Model,
    data: &Dataset,
    nll: F,
    starts: Vec<Vec<f64>>,
    steps: &[f64],
    names: &[&'static str],
    unpack: impl Fn(&[f64]) -> Vec<f64>,
) -> Result<FitResult> {
    let n = data.len() as f64;
    let objective = |x: &[f64]| nll(x) / n;
    let best = minimize_from_starts(&objective, &starts, steps, 300, 2)
        .ok_or_else(|| BasnError::Convergence(format!("{model}: no starting point")))?;
    if !best.fx.is_finite() {
        return Err(BasnError::Convergence(format!("{model}: likelihood not finite at optimum")));
    }
    let values = unpack(&best.x);
    let pairs: Vec<(&'static str, f64)> = names.iter().copied().zip(values).collect();
    let mut fit = FitResult::build(model, Params::new(&pairs), -best.fx * n, data.len(), Method::Mle);
    fit.iterations = best.iterations;
    fit.converged = best.converged;
    Ok(fit)
}

/// Fits one of the comparison models (or BASN2 itself).
pub fn baseline_fit(data: &Dataset, model: Model) -> Result<FitResult> {
    let y = data.values();
    let m = data.moments()?;
    let (mean, sd) = (m.m1, m.sd());
    match model {
        Model::Basn2 => mle_fit(data, None),
        Model::Normal => Ok(FitResult::build(
            model,
            Params::new(&[("mu", mean), ("sigma", sd)]),
            normal_loglik(y, mean, sd),
            data.len(),
            Method::ClosedForm,
        )),
        Model::Laplace => {
            let loc = data.median();
            let scale = compensated_sum(y.iter().map(|v| (v - loc).abs())) / y.len() as f64;
            if !(scale > 0.0) {
                return Err(BasnError::estimation("laplace: zero mean absolute deviation"));
            }
            Ok(FitResult::build(
                model,
                Params::new(&[("mu", loc), ("b", scale)]),
                laplace_loglik(y, loc, scale),
                data.len(),
                Method::ClosedForm,
            ))
        }
        Model::Logistic => simplex_fit(
            model,
            data,
            |x| -logistic_loglik(y, x[0], x[1].exp()),
            vec![vec![mean, (sd * 3f64.sqrt() / std::f64::consts::PI).ln()], vec![data.median(), sd.ln()]],
            &[0.1 * sd, 0.1],
            &["mu", "s"],
            |x| vec![x[0], x[1].exp()],
        ),
        Model::Sn => {
            let starts = [-3.0, -1.0, 0.0, 1.0, 3.0]
                .into_iter()
                .map(|l: f64| {
                    let delta = l / (1.0 + l * l).sqrt();
                    let s = sd / (1.0 - SQRT_2_OVER_PI.powi(2) * delta * delta).sqrt();
                    vec![l, mean - s * delta * SQRT_2_OVER_PI, s.ln()]
                })
                .collect();
            simplex_fit(
                model,
                data,
                |x| -sn_loglik(y, x[0], x[1], x[2].exp()),
                starts,
                &[0.25, 0.1 * sd, 0.1],
                &["lambda", "mu", "sigma"],
                |x| vec![x[0], x[1], x[2].exp()],
            )
        }
        Model::Asn => {
            let starts = [-2.0, -1.0, 0.0, 1.0, 2.0]
                .into_iter()
                .map(|a: f64| {
                    let c = 2.0 + a * a;
                    let (e1, e2) = (-2.0 * a / c, (2.0 + 3.0 * a * a) / c);
                    let s = sd / (e2 - e1 * e1).sqrt();
                    vec![a, mean - s * e1, s.ln()]
                })
                .collect();
            simplex_fit(
                model,
                data,
                |x| -asn_loglik(y, x[0], x[1], x[2].exp()),
                starts,
                &[0.25, 0.1 * sd, 0.1],
                &["alpha", "mu", "sigma"],
                |x| vec![x[0], x[1], x[2].exp()],
            )
        }
    }
}
