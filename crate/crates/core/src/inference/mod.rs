//! Estimation for the location-scale BASN2 model and its comparison set.

mod baselines;
mod compare;
mod dataset;
mod fit;
mod likelihood;
mod mle;
mod mom;
pub mod optim;

pub use baselines::{asn_loglik, baseline_fit, laplace_loglik, logistic_loglik, sn_loglik};
pub use compare::{
    compare_models, fit_model, lr_test_normal_vs_basn2, ComparisonReport, ComparisonRow, LrTestResult,
    CHI2_1_CRITICAL_1PCT,
};
pub use dataset::{sample_moments, Dataset, SampleMoments, MIN_OBSERVATIONS};
pub use fit::{FitResult, Method, Model, Params};
pub use likelihood::{
    basn2_loglik, diagnostics, normal_loglik, obs_hessian, obs_score, observed_info, observed_info_numeric, score,
    vcov, Matrix, MatrixDiagnostics,
};
pub use mle::{mle_fit, SCORE_TOLERANCE, START_ALPHAS};
pub use mom::{exact_moments, mom_candidates, mom_fit, MomCandidate, ALPHA_RANGE};
