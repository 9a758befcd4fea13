//! Pathloss gains and lognormal shadowing.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ln(10)/10, the dB-to-natural-log scale factor.
pub const A_CONST: f64 = core::f64::consts::LN_10 / 10.0;

/// Parameters of the slowly-varying received power distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowingParams {
    /// Standard deviation of the dB-domain normal variate.
    pub sigma_db: f64,
    /// Mean received power in dB: m = (1/a) ln(K P r^-eta).
    pub mean_db: f64,
}

impl ShadowingParams {
    pub fn new(sigma_db: f64, mean_db: f64) -> Result<Self> {
        if !(sigma_db.is_finite() && sigma_db >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma_db",
                reason: format!("must be >= 0 dB, got {sigma_db}"),
            });
        }
        if !mean_db.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mean_db",
                reason: format!("must be finite, got {mean_db}"),
            });
        }
        Ok(ShadowingParams { sigma_db, mean_db })
    }

    /// Parameters for a mean received power given in watts.
    pub fn for_mean_power(sigma_db: f64, mean_power_w: f64) -> Result<Self> {
        if !(mean_power_w.is_finite() && mean_power_w > 0.0) {
            return Err(Error::InvalidParameter {
                name: "mean_power_w",
                reason: format!("must be positive, got {mean_power_w}"),
            });
        }
        Self::new(sigma_db, mean_power_w.ln() / A_CONST)
    }

    pub fn a_const(&self) -> f64 {
        A_CONST
    }
}

/// Deterministic path gain K r^-eta.
pub fn pathloss_gain(r: f64, pathloss_k: f64, eta: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!(
            "pathloss gain undefined at r = {r}; distances must be positive"
        )));
    }
    Ok(pathloss_k * r.powf(-eta))
}

/// One lognormal shadowing factor Y = 10^(xi/10), xi ~ Normal(0, sigma²).
///
/// A zero sigma yields exactly 1. The normal draw is consumed either way
/// so stream positions do not depend on sigma.
pub fn sample_shadowing<R: Rng + ?Sized>(sigma_db: f64, rng: &mut R) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    10f64.powf(sigma_db * z / 10.0)
}

/// Density of the slowly-varying received power s.
///
/// The exponent groups the spread as √2·a·σ; the matching normalization
/// is 1/(√2·a·σ·s·√π).
pub fn shadowing_pdf(s: f64, params: &ShadowingParams) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!(
            "shadowing pdf undefined at s = {s}; power must be positive"
        )));
    }
    if params.sigma_db <= 0.0 {
        return Err(Error::Domain(
            "shadowing pdf degenerate for sigma_db = 0".to_string(),
        ));
    }
    let a = A_CONST;
    let spread = core::f64::consts::SQRT_2 * a * params.sigma_db;
    let z = (s.ln() - a * params.mean_db) / spread;
    Ok((-z * z).exp() / (spread * s * core::f64::consts::PI.sqrt()))
}
