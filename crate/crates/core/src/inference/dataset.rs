use serde::Serialize;

use crate::error::{BasnError, Result};
use crate::special::compensated_sum;

/// Fewest observations accepted for a three-parameter fit.
pub const MIN_OBSERVATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    name: String,
    values: Vec<f64>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_OBSERVATIONS {
            return Err(BasnError::Data(format!(
                "need at least {MIN_OBSERVATIONS} observations, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(BasnError::Data(format!("value #{} is not finite: {}", i + 1, values[i])));
        }
        Ok(Dataset {
            name: name.into(),
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn moments(&self) -> Result<SampleMoments> {
        sample_moments(&self.values)
    }

    /// Sample median (mean of the two middle order statistics for even n).
    pub fn median(&self) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        }
    }
}

/// First three raw sample moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleMoments {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl SampleMoments {
    /// Biased (divide by n) sample variance.
    pub fn variance(&self) -> f64 {
        self.m2 - self.m1 * self.m1
    }

    pub fn sd(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// Raw moments with compensated sums. Works on any non-empty slice; only
/// degenerate (zero-variance) input is rejected.
pub fn sample_moments(values: &[f64]) -> Result<SampleMoments> {
    if values.is_empty() {
        return Err(BasnError::estimation("no observations"));
    }
    let n = values.len() as f64;
    let m1 = compensated_sum(values.iter().copied()) / n;
    let m2 = compensated_sum(values.iter().map(|v| v * v)) / n;
    let m3 = compensated_sum(values.iter().map(|v| v * v * v)) / n;
    // variance from centered values; m2 - m1^2 cancels badly for large offsets
    let central = compensated_sum(values.iter().map(|v| (v - m1) * (v - m1))) / n;
    if !(central > 0.0) {
        return Err(BasnError::estimation("sample has zero variance"));
    }
    Ok(SampleMoments { m1, m2, m3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_examples() {
        let m = sample_moments(&[-1.0, 1.0]).unwrap();
        assert_eq!((m.m1, m.m2, m.m3), (0.0, 1.0, 0.0));
        let m = sample_moments(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m.m1, 2.0);
        assert!((m.m2 - 14.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.m3, 12.0);
        assert!(sample_moments(&[2.0, 2.0, 2.0]).is_err());
        assert!(sample_moments(&[]).is_err());
    }

    #[test]
    fn dataset_validation() {
        assert!(Dataset::new("short", vec![1.0; 7]).is_err());
        let mut v: Vec<f64> = (0..10).map(f64::from).collect();
        assert_eq!(Dataset::new("ok", v.clone()).unwrap().len(), 10);
        v[3] = f64::NAN;
        assert!(matches!(Dataset::new("nan", v), Err(BasnError::Data(_))));
    }

    #[test]
    fn median_even_and_odd() {
        let d = Dataset::new("d", vec![5.0, 1.0, 3.0, 2.0, 4.0, 9.0, 7.0, 8.0]).unwrap();
        assert_eq!(d.median(), 4.5);
        let d = Dataset::new("d", vec![5.0, 1.0, 3.0, 2.0, 4.0, 9.0, 7.0, 8.0, 6.0]).unwrap();
        assert_eq!(d.median(), 5.0);
    }
}
