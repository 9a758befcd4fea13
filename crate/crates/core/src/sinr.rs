//! Per-UE received powers, serving-station association and SINR.

use rand::Rng;

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::network::{torus_distance, BsLayout, Point};
use crate::propagation::{pathloss_gain, sample_shadowing};

/// Received powers from every base station, as seen by one UE.
#[derive(Debug, Clone, PartialEq)]
pub struct RxPowerVector {
    /// Received power per BS in watts.
    pub powers: Vec<f64>,
    /// Torus distance to each BS in meters.
    pub distances: Vec<f64>,
    /// Index of the serving BS once an association rule has run.
    pub serving_index: Option<usize>,
}

impl RxPowerVector {
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }
}

/// Computes p_j = P K r_j^-eta Y_j for every BS in the layout.
///
/// Distances are clamped to R_c/1000 so a UE sitting on a BS stays
/// finite. Shadowing draws are consumed per BS in layout order.
pub fn received_powers<R: Rng + ?Sized>(
    ue: Point,
    layout: &BsLayout,
    config: &NetworkConfig,
    shadowing_on: bool,
    rng: &mut R,
) -> Result<RxPowerVector> {
    if layout.is_empty() {
        return Err(Error::EmptyLayout);
    }
    let r_min = config.r_min();
    let mut powers = Vec::with_capacity(layout.count());
    let mut distances = Vec::with_capacity(layout.count());
    for &bs in &layout.positions {
        let r = torus_distance(ue, bs, layout.side).max(r_min);
        let mean = config.tx_power_p * pathloss_gain(r, config.pathloss_k, config.eta)?;
        let y = if shadowing_on {
            sample_shadowing(config.sigma_db, rng)
        } else {
            1.0
        };
        powers.push(mean * y);
        distances.push(r);
    }
    Ok(RxPowerVector {
        powers,
        distances,
        serving_index: None,
    })
}

/// Serving BS = closest BS; ties go to the lowest index.
pub fn associate_nearest(mut rx: RxPowerVector) -> RxPowerVector {
    debug_assert!(!rx.is_empty());
    let mut best = 0;
    for (j, &d) in rx.distances.iter().enumerate().skip(1) {
        if d < rx.distances[best] {
            best = j;
        }
    }
    rx.serving_index = Some(best);
    rx
}

/// Serving BS = highest received power; ties go to the lowest index.
pub fn associate_best_server(mut rx: RxPowerVector) -> RxPowerVector {
    debug_assert!(!rx.is_empty());
    let mut best = 0;
    for (j, &p) in rx.powers.iter().enumerate().skip(1) {
        if p > rx.powers[best] {
            best = j;
        }
    }
    rx.serving_index = Some(best);
    rx
}

/// SINR of the serving BS against the sum of all other stations plus noise.
///
/// A single BS with zero noise yields +inf, which campaign collection
/// treats as a skipped sample.
pub fn compute_sinr(rx: &RxPowerVector, noise_nth: f64) -> Result<f64> {
    let serving = rx.serving_index.ok_or(Error::ServingIndexUnset)?;
    let mut interference = 0.0;
    for (j, &p) in rx.powers.iter().enumerate() {
        if j != serving {
            interference += p;
        }
    }
    Ok(rx.powers[serving] / (interference + noise_nth))
}

/// Shannon spectral efficiency log2(1 + sinr) in bits/s/Hz.
pub fn spectral_efficiency(sinr: f64) -> f64 {
    debug_assert!(sinr >= 0.0);
    (1.0 + sinr).log2()
}
