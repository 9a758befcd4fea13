//! Scenario files: the TOML front end to campaigns and baselines.
//!
//! Unknown keys are rejected and all physical parameters are
//! range-checked on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{Association, NetworkConfig, UeGrid};
use crate::error::{Error, Result};
use crate::fluid::{FluidParams, DEFAULT_FIT_A, DEFAULT_FIT_B};
use crate::network;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub network: NetworkSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub fluid: FluidSection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    pub half_isd_rc: f64,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default)]
    pub sigma_db: f64,
    #[serde(default = "default_one")]
    pub tx_power_p: f64,
    #[serde(default = "default_one")]
    pub pathloss_k: f64,
    #[serde(default)]
    pub noise_nth: f64,
    #[serde(default = "default_mean_bs")]
    pub mean_bs_count: f64,
    #[serde(default = "default_ue_count")]
    pub ue_grid_count: usize,
    #[serde(default = "default_n_runs")]
    pub n_runs: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_ue_grid")]
    pub ue_grid: UeGrid,
}

fn default_eta() -> f64 {
    3.0
}
fn default_one() -> f64 {
    1.0
}
fn default_mean_bs() -> f64 {
    50.0
}
fn default_ue_count() -> usize {
    400
}
fn default_n_runs() -> usize {
    500
}
fn default_seed() -> u64 {
    1
}
fn default_ue_grid() -> UeGrid {
    UeGrid::Uniform
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// Pathloss exponents to sweep; default is the base eta only.
    #[serde(default)]
    pub eta_list: Vec<f64>,
    /// Shadowing standard deviations to sweep; default is the base sigma.
    #[serde(default)]
    pub sigma_db_list: Vec<f64>,
    #[serde(default = "default_associations")]
    pub associations: Vec<Association>,
}

fn default_associations() -> Vec<Association> {
    vec![Association::BestServer]
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            eta_list: Vec::new(),
            sigma_db_list: Vec::new(),
            associations: default_associations(),
        }
    }
}

/// Density mapping from the half inter-site distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityMapping {
    /// rho = 1/(4 R_c²): Poisson nearest-neighbor mean distance.
    PoissonNn,
    /// rho = 1/(2 sqrt(3) R_c²): hexagonal grid equivalent.
    Hexagonal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluidSection {
    #[serde(default = "default_fit_a")]
    pub fit_a: f64,
    #[serde(default = "default_fit_b")]
    pub fit_b: f64,
    #[serde(default = "default_mapping")]
    pub density_mapping: DensityMapping,
    /// Direct density override in BS/m²; wins over the mapping.
    #[serde(default)]
    pub rho_bs: Option<f64>,
}

fn default_fit_a() -> f64 {
    DEFAULT_FIT_A
}
fn default_fit_b() -> f64 {
    DEFAULT_FIT_B
}
fn default_mapping() -> DensityMapping {
    DensityMapping::PoissonNn
}

impl Default for FluidSection {
    fn default() -> Self {
        FluidSection {
            fit_a: default_fit_a(),
            fit_b: default_fit_b(),
            density_mapping: default_mapping(),
            rho_bs: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    #[serde(default = "default_p_lo")]
    pub p_lo: f64,
    #[serde(default = "default_p_hi")]
    pub p_hi: f64,
}

fn default_p_lo() -> f64 {
    0.05
}
fn default_p_hi() -> f64 {
    0.95
}

impl Default for CompareSection {
    fn default() -> Self {
        CompareSection {
            p_lo: default_p_lo(),
            p_hi: default_p_hi(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_out_dir")]
    pub dir: String,
    /// SINR thresholds (dB) at which outage is reported.
    #[serde(default)]
    pub outage_thresholds_db: Vec<f64>,
}

fn default_out_dir() -> String {
    "out".to_string()
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: default_out_dir(),
            outage_thresholds_db: Vec::new(),
        }
    }
}

impl Scenario {
    pub fn from_str(text: &str) -> Result<Self> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        // base config must pass the full range checks
        self.network_config(self.network.eta, self.network.sigma_db)?
            .validate()?;
        for &eta in self.eta_list().iter() {
            if !(eta.is_finite() && eta > 2.0) {
                return Err(Error::InvalidParameter {
                    name: "sweep.eta_list",
                    reason: format!("every eta must exceed 2, got {eta}"),
                });
            }
        }
        for &sigma in self.sigma_list().iter() {
            if !(sigma.is_finite() && sigma >= 0.0) {
                return Err(Error::InvalidParameter {
                    name: "sweep.sigma_db_list",
                    reason: format!("every sigma must be >= 0 dB, got {sigma}"),
                });
            }
        }
        if self.sweep.associations.is_empty() {
            return Err(Error::InvalidParameter {
                name: "sweep.associations",
                reason: "at least one association mode required".to_string(),
            });
        }
        let cmp = &self.compare;
        if !(cmp.p_lo > 0.0 && cmp.p_lo < cmp.p_hi && cmp.p_hi < 1.0) {
            return Err(Error::InvalidParameter {
                name: "compare",
                reason: format!("need 0 < p_lo < p_hi < 1, got [{}, {}]", cmp.p_lo, cmp.p_hi),
            });
        }
        if let Some(rho) = self.fluid.rho_bs {
            if !(rho.is_finite() && rho > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "fluid.rho_bs",
                    reason: format!("density must be positive, got {rho}"),
                });
            }
        }
        if !(self.fluid.fit_a.is_finite() && self.fluid.fit_b.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "fluid.fit_a/fit_b",
                reason: "fit constants must be finite".to_string(),
            });
        }
        Ok(())
    }

    pub fn eta_list(&self) -> Vec<f64> {
        if self.sweep.eta_list.is_empty() {
            vec![self.network.eta]
        } else {
            self.sweep.eta_list.clone()
        }
    }

    pub fn sigma_list(&self) -> Vec<f64> {
        if self.sweep.sigma_db_list.is_empty() {
            vec![self.network.sigma_db]
        } else {
            self.sweep.sigma_db_list.clone()
        }
    }

    fn rho_override(&self) -> Option<f64> {
        if let Some(rho) = self.fluid.rho_bs {
            return Some(rho);
        }
        match self.fluid.density_mapping {
            DensityMapping::PoissonNn => None,
            DensityMapping::Hexagonal => {
                Some(network::hexagonal_density(self.network.half_isd_rc).expect("validated rc"))
            }
        }
    }

    /// Network configuration for one sweep combination.
    pub fn network_config(&self, eta: f64, sigma_db: f64) -> Result<NetworkConfig> {
        let n = &self.network;
        let config = NetworkConfig {
            half_isd_rc: n.half_isd_rc,
            eta,
            sigma_db,
            tx_power_p: n.tx_power_p,
            pathloss_k: n.pathloss_k,
            noise_nth: n.noise_nth,
            mean_bs_count: n.mean_bs_count,
            ue_grid_count: n.ue_grid_count,
            n_runs: n.n_runs,
            seed: n.seed,
            ue_grid: n.ue_grid,
            rho_bs_override: self.rho_override(),
        };
        config.validate()?;
        Ok(config)
    }

    /// Fluid baseline parameters for one eta.
    pub fn fluid_params(&self, eta: f64) -> Result<FluidParams> {
        let rho_bs = match self.rho_override() {
            Some(rho) => rho,
            None => network::derive_density(self.network.half_isd_rc)?,
        };
        let params = FluidParams {
            half_isd_rc: self.network.half_isd_rc,
            rho_bs,
            eta,
            fit_a: self.fluid.fit_a,
            fit_b: self.fluid.fit_b,
        };
        params.validate()?;
        Ok(params)
    }
}
