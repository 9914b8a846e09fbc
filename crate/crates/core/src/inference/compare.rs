use std::cmp::Ordering;

use serde::Serialize;

use super::baselines::baseline_fit;
use super::dataset::Dataset;
use super::fit::{FitResult, Method, Model};
use super::mle::mle_fit;
use super::mom::mom_fit;
use crate::error::{BasnError, Result};

/// 99% point of the chi-square distribution with one degree of freedom.
pub const CHI2_1_CRITICAL_1PCT: f64 = 6.635;

/// Fits `model` by `method`. Only BASN2 supports the moment method.
pub fn fit_model(data: &Dataset, model: Model, method: Method) -> Result<FitResult> {
    match (model, method) {
        (Model::Basn2, Method::Mom) => mom_fit(data),
        (Model::Basn2, _) => mle_fit(data, None),
        (_, Method::Mom) => Err(BasnError::domain(format!("method 'mom' is only available for basn2, not {model}"))),
        _ => baseline_fit(data, model),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LrTestResult {
    pub statistic: f64,
    pub critical_1pct: f64,
    pub reject_null: bool,
    pub loglik_null: f64,
    pub loglik_alt: f64,
}

/// Likelihood-ratio test of the normal model against BASN2 (`alpha = 0`).
pub fn lr_test_normal_vs_basn2(data: &Dataset) -> Result<LrTestResult> {
    let null = baseline_fit(data, Model::Normal)?;
    let alt = mle_fit(data, None)?;
    if !alt.converged {
        return Err(BasnError::Convergence(format!("basn2 fit did not converge: {}", alt.notes.join("; "))));
    }
    let statistic = 2.0 * (alt.loglik - null.loglik);
    Ok(LrTestResult {
        statistic,
        critical_1pct: CHI2_1_CRITICAL_1PCT,
        reject_null: statistic > CHI2_1_CRITICAL_1PCT,
        loglik_null: null.loglik,
        loglik_alt: alt.loglik,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    /// 1-based rank; `None` for failed fits, which sort last.
    pub rank: Option<usize>,
    pub model: Model,
    pub fit: Option<FitResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub dataset: String,
    pub n: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    /// Models of the successful fits in rank order.
    pub fn ranking(&self) -> Vec<Model> {
        self.rows.iter().filter(|r| r.fit.is_some()).map(|r| r.model).collect()
    }
}

fn order(a: &ComparisonRow, b: &ComparisonRow) -> Ordering {
    match (&a.fit, &b.fit) {
        (Some(x), Some(y)) => x
            .aic
            .total_cmp(&y.aic)
            .then(x.bic.total_cmp(&y.bic))
            .then(a.model.name().cmp(b.model.name())),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.model.name().cmp(b.model.name()),
    }
}

/// Fits every model (in parallel) and ranks by AIC, then BIC, then name.
/// A failing model is kept as a row carrying its error.
pub fn compare_models(data: &Dataset, models: &[Model]) -> Result<ComparisonReport> {
    if models.is_empty() {
        return Err(BasnError::domain("model list is empty"));
    }
    let mut unique: Vec<Model> = models.to_vec();
    unique.sort();
    unique.dedup();
    let mut rows: Vec<ComparisonRow> = std::thread::scope(|s| {
        let handles: Vec<_> = unique
            .iter()
            .map(|&m| (m, s.spawn(move || baseline_fit(data, m))))
            .collect();
        handles
            .into_iter()
            .map(|(model, h)| {
                let res = h.join().unwrap_or_else(|_| Err(BasnError::Convergence("fit panicked".into())));
                match res {
                    Ok(fit) => ComparisonRow {
                        rank: None,
                        model,
                        fit: Some(fit),
                        error: None,
                    },
                    Err(e) => ComparisonRow {
                        rank: None,
                        model,
                        fit: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    rows.sort_by(order);
    for (i, row) in rows.iter_mut().enumerate() {
        if row.fit.is_some() {
            row.rank = Some(i + 1);
        }
    }
    Ok(ComparisonReport {
        dataset: data.name().to_string(),
        n: data.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::LocScaleParams;
    use crate::sampling::{sample_locscale, SampleConfig};

    fn bimodal() -> Dataset {
        let p = LocScaleParams::new(2.0, 0.0, 1.0).unwrap();
        Dataset::new("sim", sample_locscale(p, SampleConfig::new(500, 1).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn ranking_and_single_model() {
        let d = bimodal();
        let r = compare_models(&d, &[Model::Normal, Model::Basn2]).unwrap();
        assert_eq!(r.ranking(), vec![Model::Basn2, Model::Normal]);
        assert_eq!(r.rows[0].rank, Some(1));
        let r = compare_models(&d, &[Model::Laplace]).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].rank, Some(1));
        assert!(compare_models(&d, &[]).is_err());
    }

    #[test]
    fn lr_test_on_bimodal_rejects() {
        let lr = lr_test_normal_vs_basn2(&bimodal()).unwrap();
        assert!(lr.reject_null && lr.statistic > 0.0);
        assert_eq!(lr.critical_1pct, 6.635);
    }

    #[test]
    fn mom_only_for_basn2() {
        let d = bimodal();
        assert!(fit_model(&d, Model::Normal, Method::Mom).is_err());
        assert_eq!(fit_model(&d, Model::Basn2, Method::Mom).unwrap().method, Method::Mom);
    }
}
