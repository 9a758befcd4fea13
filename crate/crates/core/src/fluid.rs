//! Fluid-model analytical baseline.
//!
//! The fluid model replaces discrete interferers by a continuous density
//! of transmitters starting at distance 2 R_c from the serving station,
//! giving a closed-form SINR that depends only on the UE distance r. A
//! fitted dB offset (fit_a * eta + fit_b) aligns its CDF with the Poisson
//! network's.

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::montecarlo::QuantileFn;
use crate::network::derive_density;
use crate::numeric::{adaptive_simpson, bisect};
use crate::sinr::spectral_efficiency;

/// Parameters of the fluid baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidParams {
    /// Half inter-site distance R_c in meters.
    pub half_isd_rc: f64,
    /// Base-station density in BS/m².
    pub rho_bs: f64,
    /// Pathloss exponent, must exceed 2.
    pub eta: f64,
    /// dB correction slope per unit eta.
    pub fit_a: f64,
    /// dB correction intercept.
    pub fit_b: f64,
}

pub const DEFAULT_FIT_A: f64 = 3.0;
pub const DEFAULT_FIT_B: f64 = -6.0;

impl FluidParams {
    /// Density from the nearest-neighbor mapping, default fit constants.
    pub fn new(half_isd_rc: f64, eta: f64) -> Result<Self> {
        let rho_bs = derive_density(half_isd_rc)?;
        let params = FluidParams {
            half_isd_rc,
            rho_bs,
            eta,
            fit_a: DEFAULT_FIT_A,
            fit_b: DEFAULT_FIT_B,
        };
        params.validate()?;
        Ok(params)
    }

    /// Baseline consistent with a network configuration.
    pub fn from_network(config: &NetworkConfig) -> Result<Self> {
        config.validate()?;
        Ok(FluidParams {
            half_isd_rc: config.half_isd_rc,
            rho_bs: config.rho_bs(),
            eta: config.eta,
            fit_a: DEFAULT_FIT_A,
            fit_b: DEFAULT_FIT_B,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_isd_rc.is_finite() && self.half_isd_rc > 0.0) {
            return Err(Error::InvalidParameter {
                name: "half_isd_rc",
                reason: format!("must be positive, got {}", self.half_isd_rc),
            });
        }
        if !(self.rho_bs.is_finite() && self.rho_bs > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rho_bs",
                reason: format!("must be positive, got {}", self.rho_bs),
            });
        }
        if !(self.eta.is_finite() && self.eta > 2.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                reason: format!("must exceed 2, got {}", self.eta),
            });
        }
        if !(self.fit_a.is_finite() && self.fit_b.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "fit_a/fit_b",
                reason: "fit constants must be finite".to_string(),
            });
        }
        Ok(())
    }

    /// The dB offset subtracted by the modified model.
    pub fn correction_db(&self) -> f64 {
        self.fit_a * self.eta + self.fit_b
    }

    /// Lower distance cap, consistent with the simulator clamp.
    pub fn r_min(&self) -> f64 {
        self.half_isd_rc / 1000.0
    }
}

fn check_radius(r: f64, params: &FluidParams) -> Result<()> {
    if !(r.is_finite() && r > 0.0 && r <= params.half_isd_rc) {
        return Err(Error::Domain(format!(
            "fluid SINR defined on (0, {}], got r = {r}",
            params.half_isd_rc
        )));
    }
    Ok(())
}

fn fluid_sinr_unchecked(r: f64, params: &FluidParams) -> f64 {
    let eta = params.eta;
    let prefactor = (eta - 2.0) / (2.0 * core::f64::consts::PI * params.rho_bs);
    prefactor * r.powf(-eta) / (2.0 * params.half_isd_rc - r).powf(2.0 - eta)
}

/// SINR of a user at distance r from its serving BS, linear scale.
pub fn fluid_sinr(r: f64, params: &FluidParams) -> Result<f64> {
    params.validate()?;
    check_radius(r, params)?;
    Ok(fluid_sinr_unchecked(r, params))
}

/// Fluid SINR with the fitted correction, in dB.
pub fn modified_fluid_sinr_db(r: f64, params: &FluidParams) -> Result<f64> {
    let gamma = fluid_sinr(r, params)?;
    Ok(10.0 * gamma.log10() - params.correction_db())
}

/// Inverts the fluid SINR on (0, R_c] by bisection in log-distance.
pub fn invert_fluid_sinr(gamma: f64, params: &FluidParams) -> Result<f64> {
    params.validate()?;
    let rc = params.half_isd_rc;
    let edge = fluid_sinr_unchecked(rc, params);
    if !(gamma.is_finite() && gamma >= edge) {
        return Err(Error::SinrOutOfRange { gamma, min: edge });
    }
    if gamma == edge {
        return Ok(rc);
    }
    // gamma is strictly decreasing in r, so walk the lower bracket out
    // until it encloses the target, then bisect on ln r.
    let mut lo = rc;
    for _ in 0..4096 {
        lo *= 0.5;
        if fluid_sinr_unchecked(lo, params) >= gamma {
            break;
        }
    }
    if fluid_sinr_unchecked(lo, params) < gamma {
        return Err(Error::Numerics(format!(
            "could not bracket fluid inverse for gamma = {gamma}"
        )));
    }
    let log_r = bisect(
        |x| fluid_sinr_unchecked(x.exp(), params) - gamma,
        lo.ln(),
        rc.ln(),
        1e-12,
    )?;
    let r = log_r.exp().min(rc);
    Ok(r)
}

/// CDF of the fluid SINR for a user uniform on the disc of radius R_c.
///
/// With the `modified` flag the input is shifted by +correction before
/// inversion, equivalent to translating the whole CDF.
pub fn fluid_cdf(gamma_db: f64, params: &FluidParams, modified: bool) -> Result<f64> {
    params.validate()?;
    let shifted_db = if modified {
        gamma_db + params.correction_db()
    } else {
        gamma_db
    };
    let gamma = 10f64.powf(shifted_db / 10.0);
    let rc = params.half_isd_rc;
    let edge = fluid_sinr_unchecked(rc, params);
    if gamma < edge {
        return Ok(0.0);
    }
    let cap = fluid_sinr_unchecked(params.r_min(), params);
    if gamma >= cap {
        return Ok(1.0);
    }
    let r = invert_fluid_sinr(gamma, params)?;
    Ok(1.0 - (r / rc) * (r / rc))
}

/// Quantile of the fluid SINR CDF in dB, exact from the disc geometry:
/// p = 1 - (r/R_c)² inverts to r = R_c sqrt(1 - p).
pub fn fluid_quantile_db(p: f64, params: &FluidParams, modified: bool) -> Result<f64> {
    params.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile level {p} outside (0, 1)")));
    }
    let r = (params.half_isd_rc * (1.0 - p).sqrt()).max(params.r_min());
    let db = 10.0 * fluid_sinr_unchecked(r, params).log10();
    Ok(if modified {
        db - params.correction_db()
    } else {
        db
    })
}

/// Analytic quantile curve, usable wherever an empirical CDF is.
#[derive(Debug, Clone, Copy)]
pub struct FluidCdfCurve {
    pub params: FluidParams,
    pub modified: bool,
}

impl QuantileFn for FluidCdfCurve {
    fn quantile_db(&self, p: f64) -> f64 {
        fluid_quantile_db(p, &self.params, self.modified).expect("validated params")
    }
}

/// Throughput at the cell edge, r = R_c.
pub fn cell_edge_throughput(params: &FluidParams) -> Result<f64> {
    let gamma = fluid_sinr(params.half_isd_rc, params)?;
    Ok(spectral_efficiency(gamma))
}

/// Cell-average throughput (2/R_c²) ∫ r log2(1 + gamma(r)) dr over
/// [r_min, R_c], by adaptive quadrature.
pub fn cell_average_throughput(params: &FluidParams) -> Result<f64> {
    params.validate()?;
    let rc = params.half_isd_rc;
    let integral = adaptive_simpson(
        |r| r * spectral_efficiency(fluid_sinr_unchecked(r, params)),
        params.r_min(),
        rc,
        1e-6,
    )?;
    Ok(2.0 / (rc * rc) * integral)
}
