use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network;

/// How a UE picks its serving base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Association {
    /// Attach to the closest base station.
    Nearest,
    /// Attach to the base station delivering the highest received power.
    BestServer,
}

impl Association {
    pub fn label(&self) -> &'static str {
        match self {
            Association::Nearest => "nearest",
            Association::BestServer => "best_server",
        }
    }
}

/// Placement of the fixed UE measurement grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UeGrid {
    /// i.i.d. uniform positions, drawn once from the master seed.
    Uniform,
    /// Regular square lattice with half-cell offset.
    Lattice,
}

/// Full scenario parameterization for one Monte Carlo campaign.
///
/// The simulated area is derived, never set directly: the expected
/// base-station count fixes `S_A = mean_bs_count / rho_bs`, with the
/// density coming from the half inter-site distance unless overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    /// Expected half inter-site distance R_c in meters.
    pub half_isd_rc: f64,
    /// Pathloss exponent, must exceed 2.
    pub eta: f64,
    /// Shadowing standard deviation in dB.
    pub sigma_db: f64,
    /// Transmit power per subcarrier in watts, uniform across BS.
    pub tx_power_p: f64,
    /// Dimensionless pathloss constant K.
    pub pathloss_k: f64,
    /// Thermal noise per subcarrier in watts. Zero means
    /// interference-limited.
    pub noise_nth: f64,
    /// Expected number of base stations in the area.
    pub mean_bs_count: f64,
    /// Number of fixed UE measurement positions.
    pub ue_grid_count: usize,
    /// Number of Monte Carlo runs (independent layout draws).
    pub n_runs: usize,
    /// Master seed; every random stream in a campaign derives from it.
    pub seed: u64,
    /// UE grid placement mode.
    pub ue_grid: UeGrid,
    /// Optional explicit density in BS/m², replacing the default
    /// nearest-neighbor mapping 1/(4 R_c²).
    pub rho_bs_override: Option<f64>,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            half_isd_rc: 500.0,
            eta: 3.0,
            sigma_db: 0.0,
            tx_power_p: 1.0,
            pathloss_k: 1.0,
            noise_nth: 0.0,
            mean_bs_count: 50.0,
            ue_grid_count: 400,
            n_runs: 500,
            seed: 1,
            ue_grid: UeGrid::Uniform,
            rho_bs_override: None,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, name: &'static str, reason: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: reason.to_string(),
                })
            }
        }
        check(
            self.half_isd_rc.is_finite() && self.half_isd_rc > 0.0,
            "half_isd_rc",
            "must be a positive length in meters",
        )?;
        check(
            self.eta.is_finite() && self.eta > 2.0,
            "eta",
            "pathloss exponent must exceed 2",
        )?;
        check(
            self.sigma_db.is_finite() && self.sigma_db >= 0.0,
            "sigma_db",
            "shadowing std dev must be >= 0 dB",
        )?;
        check(
            self.tx_power_p.is_finite() && self.tx_power_p > 0.0,
            "tx_power_p",
            "transmit power must be positive",
        )?;
        check(
            self.pathloss_k.is_finite() && self.pathloss_k > 0.0,
            "pathloss_k",
            "pathloss constant must be positive",
        )?;
        check(
            self.noise_nth.is_finite() && self.noise_nth >= 0.0,
            "noise_nth",
            "thermal noise must be >= 0 W",
        )?;
        check(
            self.mean_bs_count.is_finite() && self.mean_bs_count > 0.0,
            "mean_bs_count",
            "expected BS count must be positive",
        )?;
        check(self.ue_grid_count > 0, "ue_grid_count", "must be positive")?;
        check(self.n_runs > 0, "n_runs", "must be positive")?;
        if let Some(rho) = self.rho_bs_override {
            check(
                rho.is_finite() && rho > 0.0,
                "rho_bs_override",
                "density must be positive",
            )?;
        }
        Ok(())
    }

    /// Base-station density in BS/m².
    pub fn rho_bs(&self) -> f64 {
        self.rho_bs_override
            .unwrap_or_else(|| network::derive_density_unchecked(self.half_isd_rc))
    }

    /// Simulated area S_A in m², chosen so that `mean_bs_count = rho_bs * S_A`.
    pub fn area(&self) -> f64 {
        self.mean_bs_count / self.rho_bs()
    }

    /// Side of the square torus in meters.
    pub fn side(&self) -> f64 {
        self.area().sqrt()
    }

    /// Distance clamp for UEs landing on top of a BS.
    pub fn r_min(&self) -> f64 {
        self.half_isd_rc / 1000.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        NetworkConfig::default().validate().unwrap();
    }

    #[test]
    fn mean_count_equals_density_times_area() {
        let cfg = NetworkConfig::default();
        let product = cfg.rho_bs() * cfg.area();
        assert!((product - cfg.mean_bs_count).abs() < 1e-9 * cfg.mean_bs_count);
    }

    #[test]
    fn eta_at_most_two_is_rejected() {
        let cfg = NetworkConfig {
            eta: 2.0,
            ..Default::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(Error::InvalidParameter { name: "eta", .. })
        ));
    }

    #[test]
    fn negative_sigma_is_rejected() {
        let cfg = NetworkConfig {
            sigma_db: -1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn density_override_replaces_mapping() {
        let cfg = NetworkConfig {
            rho_bs_override: Some(2e-6),
            ..Default::default()
        };
        assert_eq!(cfg.rho_bs(), 2e-6);
        assert!((cfg.area() - 50.0 / 2e-6).abs() < 1e-6);
    }
}
