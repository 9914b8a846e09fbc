//! The half-BASN2 lifetime distribution: the BASN2 density restricted to
//! `t >= 0` and renormalized.
//!
//! Survival is obtained by differencing the BASN2 cdf antiderivative on
//! `[t, inf)`, evaluated in complement form so it stays accurate deep in the
//! tail: `S(t) = d * sf_basn2(t) / (K / 2)`, with
//! `K = 3a^4 - 8a^3 b + 8a^2 - 8ab + 4` and `b = sqrt(2/pi)`.

use serde::Serialize;

use crate::density::{AlphaParam, Basn2};
use crate::error::{BasnError, Result};
use crate::special::{phi, SQRT_2_OVER_PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hbasn2 {
    standard: Basn2,
    norm: f64,
}

/// A hazard value; `saturated` is set when the survival function underflows
/// and the rate is reported as `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HazardValue {
    pub rate: f64,
    pub saturated: bool,
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(BasnError::domain(format!("lifetime argument must be >= 0, got {t}")));
    }
    Ok(())
}

impl Hbasn2 {
    pub fn new(alpha: AlphaParam) -> Self {
        let a = alpha.value();
        let b = SQRT_2_OVER_PI;
        let a2 = a * a;
        Hbasn2 {
            standard: Basn2::new(alpha),
            norm: 3.0 * a2 * a2 - 8.0 * a2 * a * b + 8.0 * a2 - 8.0 * a * b + 4.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.standard.alpha()
    }

    /// Normalizing constant `K`.
    pub fn normalizer(&self) -> f64 {
        self.norm
    }

    // f_T(t) = scale * basn2_pdf(t) with scale = 2 d / K
    fn scale(&self) -> f64 {
        2.0 * self.standard.constants().d / self.norm
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        let b = 1.0 - self.alpha() * t;
        let q = b * b + 1.0;
        Ok(q * q * 2.0 * phi(t) / self.norm)
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        if t == 0.0 {
            return Ok(1.0);
        }
        Ok((self.scale() * self.standard.sf(t)).min(1.0))
    }

    pub fn hazard(&self, t: f64) -> Result<HazardValue> {
        check_t(t)?;
        let s = self.standard.sf(t);
        if s < f64::MIN_POSITIVE {
            return Ok(HazardValue {
                rate: f64::INFINITY,
                saturated: true,
            });
        }
        // the 2d/K scale cancels between density and survival
        let rate = if t == 0.0 {
            self.pdf(0.0)?
        } else {
            self.standard.pdf(t) / s
        };
        Ok(HazardValue {
            rate,
            saturated: false,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HazardShapeKind {
    Increasing,
    Bathtub,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HazardShape {
    pub shape: HazardShapeKind,
    pub grid_evidence: Vec<(f64, f64)>,
}

pub const HAZARD_GRID_POINTS: usize = 2000;
/// Finite-difference slopes below this magnitude count as flat.
pub const HAZARD_FLAT_TOLERANCE: f64 = 1e-9;

/// Classifies the hazard curve on an evenly spaced grid over `[0, t_max]`.
pub fn hazard_shape(alpha: AlphaParam, t_max: f64) -> Result<HazardShape> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(BasnError::domain(format!("t_max must be positive, got {t_max}")));
    }
    let dist = Hbasn2::new(alpha);
    let step = t_max / (HAZARD_GRID_POINTS - 1) as f64;
    let mut evidence = Vec::with_capacity(HAZARD_GRID_POINTS);
    for i in 0..HAZARD_GRID_POINTS {
        let t = step * i as f64;
        let h = dist.hazard(t)?;
        if h.saturated {
            break;
        }
        evidence.push((t, h.rate));
    }
    let signs: Vec<i8> = evidence
        .windows(2)
        .map(|w| w[1].1 - w[0].1)
        .filter(|d| d.abs() > HAZARD_FLAT_TOLERANCE)
        .map(|d| if d > 0.0 { 1 } else { -1 })
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let shape = match (signs.first(), signs.last(), changes) {
        (None, _, _) => HazardShapeKind::Increasing,
        (Some(1), _, 0) => HazardShapeKind::Increasing,
        (Some(-1), Some(1), 1) => HazardShapeKind::Bathtub,
        _ => HazardShapeKind::Other,
    };
    Ok(HazardShape {
        shape,
        grid_evidence: evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::quad;
    use crate::special::norm_sf;

    fn dist(a: f64) -> Hbasn2 {
        Hbasn2::new(AlphaParam::new(a).unwrap())
    }

    #[test]
    fn pdf_examples() {
        let d0 = dist(0.0);
        for t in [0.0, 0.4, 2.0] {
            assert!((d0.pdf(t).unwrap() - 2.0 * phi(t)).abs() < 1e-16);
        }
        let d = dist(1.0);
        let b = SQRT_2_OVER_PI;
        assert!((d.pdf(1.0).unwrap() - 2.0 * phi(1.0) / (15.0 - 16.0 * b)).abs() < 1e-15);
        assert!((d.pdf(1.0).unwrap() - 0.216_64).abs() < 1e-5);
        assert!((d.pdf(0.0).unwrap() - 1.428_72).abs() < 1e-5);
        assert!(d.pdf(-0.1).is_err());
    }

    #[test]
    fn survival_examples() {
        for a in [-2.0, 0.0, 0.7, 3.0] {
            assert_eq!(dist(a).survival(0.0).unwrap(), 1.0);
        }
        for t in [0.3, 1.0, 4.0, 12.0] {
            let s = dist(0.0).survival(t).unwrap();
            assert!((s - 2.0 * norm_sf(t)).abs() <= 1e-12 * s);
        }
        let d = dist(1.0);
        let oracle = quad(|t| d.pdf(t).unwrap(), 1.0, f64::INFINITY).unwrap();
        assert!((d.survival(1.0).unwrap() - oracle).abs() < 1e-12);
        assert!((d.survival(1.0).unwrap() - 0.397_577).abs() < 1e-6);
        assert!(d.survival(-1.0).is_err());
    }

    #[test]
    fn hazard_examples() {
        let h = dist(0.0).hazard(0.0).unwrap();
        assert!((h.rate - SQRT_2_OVER_PI).abs() < 1e-15 && !h.saturated);
        let d = dist(1.0);
        let h = d.hazard(1.0).unwrap().rate;
        assert!((h - d.pdf(1.0).unwrap() / d.survival(1.0).unwrap()).abs() < 1e-12);
        assert!((h - 0.544_902).abs() < 1e-6);
        let far = dist(0.5).hazard(60.0).unwrap();
        assert!(far.saturated && far.rate.is_infinite());
        let near = dist(0.5).hazard(30.0).unwrap();
        assert!(!near.saturated && (near.rate / 30.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn zero_alpha_hazard_increases() {
        let d = dist(0.0);
        let hs: Vec<f64> = (0..=50).map(|i| d.hazard(0.1 * i as f64).unwrap().rate).collect();
        assert!(hs.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn shape_examples() {
        let cls = |a: f64| hazard_shape(AlphaParam::new(a).unwrap(), 6.0).unwrap().shape;
        assert_eq!(cls(-1.0), HazardShapeKind::Increasing);
        assert_eq!(cls(0.0), HazardShapeKind::Increasing);
        assert_eq!(cls(1.0), HazardShapeKind::Bathtub);
        assert_eq!(cls(0.7), HazardShapeKind::Other);
        assert!(hazard_shape(AlphaParam::new(1.0).unwrap(), 0.0).is_err());
    }
}
