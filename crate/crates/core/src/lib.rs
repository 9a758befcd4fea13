//! Downlink SINR statistics for Poisson cellular networks.
//!
//! The crate simulates the SINR seen by users of a cellular network whose
//! base stations follow a spatial Poisson process on a square torus, with
//! power-law pathloss and optional lognormal shadowing. Empirical SINR
//! CDFs from Monte Carlo campaigns can be compared against a closed-form
//! fluid-model baseline, including the fitted dB correction that aligns
//! the two, and against each other via horizontal quantile shifts.
//!
//! Modules
//! - [`network`]: Poisson layouts and torus geometry
//! - [`propagation`]: pathloss gains and lognormal shadowing
//! - [`sinr`]: received powers, association rules, SINR, Shannon rate
//! - [`fluid`]: the analytic baseline and its CDF
//! - [`montecarlo`]: campaigns, empirical CDFs, comparison metrics
//! - [`scenario`] / [`cli`]: the TOML-driven command-line front end

pub mod cli;
pub mod config;
pub mod error;
pub mod fluid;
pub mod montecarlo;
pub mod network;
pub mod numeric;
pub mod propagation;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod sinr;

pub use config::{Association, NetworkConfig, UeGrid};
pub use error::{Error, Result};
pub use fluid::FluidParams;
pub use montecarlo::{EmpiricalCdf, SignalDecomposition, SinrSampleSet};
pub use network::{BsLayout, Point};
pub use propagation::ShadowingParams;
pub use sinr::RxPowerVector;
