use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::likelihood::Matrix;
use crate::density::LocScaleParams;
use crate::error::{BasnError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Basn2,
    Normal,
    Laplace,
    Logistic,
    Sn,
    Asn,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Basn2,
        Model::Normal,
        Model::Laplace,
        Model::Logistic,
        Model::Sn,
        Model::Asn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Basn2 => "basn2",
            Model::Normal => "normal",
            Model::Laplace => "laplace",
            Model::Logistic => "logistic",
            Model::Sn => "sn",
            Model::Asn => "asn",
        }
    }

    /// Number of free parameters.
    pub fn k(self) -> usize {
        match self {
            Model::Basn2 | Model::Sn | Model::Asn => 3,
            Model::Normal | Model::Laplace | Model::Logistic => 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = BasnError;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| BasnError::domain(format!("unknown model '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Mle,
    Mom,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Mle => "mle",
            Method::Mom => "mom",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// Named parameter vector, serialized as a JSON object in declaration order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(Vec<(&'static str, f64)>);

impl Params {
    pub fn new(pairs: &[(&'static str, f64)]) -> Self {
        Params(pairs.to_vec())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.0.iter().copied()
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: Model,
    pub params: Params,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    /// Inverse observed information, order `(alpha, mu, sigma)`; BASN2 MLE only.
    pub vcov: Option<Matrix>,
    pub method: Method,
    pub converged: bool,
    pub iterations: usize,
    pub n: usize,
    pub k: usize,
    /// Euclidean norm of the total score divided by n, when available.
    pub score_norm: Option<f64>,
    pub notes: Vec<String>,
}

impl FitResult {
    pub(crate) fn build(model: Model, params: Params, loglik: f64, n: usize, method: Method) -> Self {
        let k = model.k();
        FitResult {
            model,
            params,
            loglik,
            aic: 2.0 * k as f64 - 2.0 * loglik,
            bic: k as f64 * (n as f64).ln() - 2.0 * loglik,
            vcov: None,
            method,
            converged: true,
            iterations: 0,
            n,
            k,
            score_norm: None,
            notes: Vec::new(),
        }
    }

    /// Location-scale BASN2 parameters (`None` for other models).
    pub fn basn2_params(&self) -> Option<LocScaleParams> {
        if self.model != Model::Basn2 {
            return None;
        }
        LocScaleParams::new(self.params.get("alpha")?, self.params.get("mu")?, self.params.get("sigma")?).ok()
    }

    /// Standard errors from the diagonal of `vcov`.
    pub fn std_errors(&self) -> Option<[f64; 3]> {
        self.vcov.map(|v| [v[0][0].sqrt(), v[1][1].sqrt(), v[2][2].sqrt()])
    }
}

pub(crate) fn basn2_named(p: &LocScaleParams) -> Params {
    Params::new(&[("alpha", p.alpha), ("mu", p.mu), ("sigma", p.sigma)])
}
