//! Monte Carlo campaigns over Poisson layouts with a fixed UE grid.
//!
//! Each run draws a fresh layout; the UE measurement grid stays fixed
//! across runs. Runs are independent work units dispatched to rayon and
//! reduced in canonical run order, so results are identical for any
//! worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Association, NetworkConfig, UeGrid};
use crate::error::{Error, Result};
use crate::network::{sample_layout, Point};
use crate::rng;
use crate::sinr::{associate_best_server, associate_nearest, compute_sinr, received_powers};

/// SINR samples collected by one campaign.
#[derive(Debug, Clone)]
pub struct SinrSampleSet {
    /// Finite SINR samples in dB, ordered by (run, ue).
    pub samples_db: Vec<f64>,
    /// Runs completed.
    pub n_runs: usize,
    /// UE samples dropped: empty layouts and infinite-SINR sentinels.
    pub n_skipped: u64,
    /// Scenario echo.
    pub scenario: NetworkConfig,
    pub association: Association,
    pub shadowing_on: bool,
}

/// Best-server useful power and interference sum per (UE, run), in dB.
#[derive(Debug, Clone)]
pub struct SignalDecomposition {
    pub useful_db: Vec<f64>,
    pub interference_db: Vec<f64>,
    pub n_skipped: u64,
}

/// Sorted-sample quantile function over SINR in dB.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sorted_samples_db: Vec<f64>,
}

/// Anything that can answer "SINR in dB at probability level p".
pub trait QuantileFn {
    fn quantile_db(&self, p: f64) -> f64;
}

impl EmpiricalCdf {
    pub fn from_samples(samples_db: &[f64]) -> Result<Self> {
        if samples_db.is_empty() {
            return Err(Error::EmptySamples);
        }
        let mut sorted: Vec<f64> = samples_db.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        Ok(EmpiricalCdf {
            sorted_samples_db: sorted,
        })
    }

    pub fn len(&self) -> usize {
        self.sorted_samples_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_samples_db.is_empty()
    }

    pub fn sorted_samples_db(&self) -> &[f64] {
        &self.sorted_samples_db
    }

    /// Order-statistic quantile: the ceil(p n)-th smallest sample.
    pub fn quantile(&self, p: f64) -> f64 {
        assert!(p > 0.0 && p < 1.0, "quantile level {p} outside (0, 1)");
        let n = self.sorted_samples_db.len();
        let k = (p * n as f64).ceil() as usize;
        self.sorted_samples_db[k.clamp(1, n) - 1]
    }

    /// Linearly interpolated quantile, used for the fixed-grid CSV export.
    pub fn quantile_interp(&self, p: f64) -> f64 {
        assert!(p > 0.0 && p < 1.0, "quantile level {p} outside (0, 1)");
        let n = self.sorted_samples_db.len();
        if n == 1 {
            return self.sorted_samples_db[0];
        }
        let pos = p * (n - 1) as f64;
        let lo = pos.floor() as usize;
        let frac = pos - lo as f64;
        if lo + 1 >= n {
            return self.sorted_samples_db[n - 1];
        }
        self.sorted_samples_db[lo] + frac * (self.sorted_samples_db[lo + 1] - self.sorted_samples_db[lo])
    }

    /// Right-continuous empirical CDF: fraction of samples <= x.
    pub fn cdf(&self, x_db: f64) -> f64 {
        let n = self.sorted_samples_db.len();
        let k = self.sorted_samples_db.partition_point(|&s| s <= x_db);
        k as f64 / n as f64
    }
}

impl QuantileFn for EmpiricalCdf {
    fn quantile_db(&self, p: f64) -> f64 {
        self.quantile(p)
    }
}

/// Per-UE record of one run, before skip rules are applied.
struct UeSample {
    sinr_db: f64,
    useful_db: f64,
    interference_db: f64,
}

struct RunRecord {
    per_ue: Vec<UeSample>,
    empty_layout: bool,
}

/// The fixed UE measurement grid for a campaign.
pub fn ue_positions(config: &NetworkConfig) -> Vec<Point> {
    let side = config.side();
    match config.ue_grid {
        UeGrid::Uniform => {
            let mut grid_rng = rng::ue_grid_stream(config.seed);
            (0..config.ue_grid_count)
                .map(|_| {
                    Point::new(
                        rand::Rng::random::<f64>(&mut grid_rng) * side,
                        rand::Rng::random::<f64>(&mut grid_rng) * side,
                    )
                })
                .collect()
        }
        UeGrid::Lattice => {
            let k = (config.ue_grid_count as f64).sqrt().ceil() as usize;
            let step = side / k as f64;
            (0..config.ue_grid_count)
                .map(|i| {
                    let ix = i % k;
                    let iy = i / k;
                    Point::new((ix as f64 + 0.5) * step, (iy as f64 + 0.5) * step)
                })
                .collect()
        }
    }
}

fn simulate_run(
    config: &NetworkConfig,
    ue_grid: &[Point],
    run: u64,
    association: Association,
    shadowing_on: bool,
) -> RunRecord {
    let mut layout_rng = rng::layout_stream(config.seed, run);
    let layout = sample_layout(config, &mut layout_rng);
    if layout.is_empty() {
        return RunRecord {
            per_ue: Vec::new(),
            empty_layout: true,
        };
    }
    let mut shadow_rng = rng::shadowing_stream(config.seed, run);
    let per_ue = ue_grid
        .iter()
        .map(|&ue| {
            let rx = received_powers(ue, &layout, config, shadowing_on, &mut shadow_rng)
                .expect("nonempty layout");
            let rx = match association {
                Association::Nearest => associate_nearest(rx),
                Association::BestServer => associate_best_server(rx),
            };
            let serving = rx.serving_index.expect("association ran");
            let useful = rx.powers[serving];
            let sinr = compute_sinr(&rx, config.noise_nth).expect("serving set");
            let interference: f64 = rx
                .powers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != serving)
                .map(|(_, &p)| p)
                .sum();
            UeSample {
                sinr_db: 10.0 * sinr.log10(),
                useful_db: 10.0 * useful.log10(),
                interference_db: 10.0 * interference.log10(),
            }
        })
        .collect();
    RunRecord {
        per_ue,
        empty_layout: false,
    }
}

fn run_all(
    config: &NetworkConfig,
    association: Association,
    shadowing_on: bool,
) -> Result<Vec<RunRecord>> {
    config.validate()?;
    let ue_grid = ue_positions(config);
    Ok((0..config.n_runs as u64)
        .into_par_iter()
        .map(|run| simulate_run(config, &ue_grid, run, association, shadowing_on))
        .collect())
}

/// Runs a full campaign and collects finite SINR samples.
pub fn run_campaign(
    config: &NetworkConfig,
    association: Association,
    shadowing_on: bool,
) -> Result<SinrSampleSet> {
    let records = run_all(config, association, shadowing_on)?;
    let mut samples_db = Vec::with_capacity(config.n_runs * config.ue_grid_count);
    let mut n_skipped = 0u64;
    for record in &records {
        if record.empty_layout {
            n_skipped += config.ue_grid_count as u64;
            continue;
        }
        for ue in &record.per_ue {
            if ue.sinr_db.is_finite() {
                samples_db.push(ue.sinr_db);
            } else {
                n_skipped += 1;
            }
        }
    }
    if samples_db.is_empty() {
        return Err(Error::EmptyCampaign);
    }
    Ok(SinrSampleSet {
        samples_db,
        n_runs: config.n_runs,
        n_skipped,
        scenario: config.clone(),
        association,
        shadowing_on,
    })
}

/// Best-server useful signal and interference sums, per (UE, run).
///
/// Uses the same random streams as `run_campaign`, so with zero noise the
/// campaign SINR samples equal useful_db - interference_db pairwise.
pub fn decompose_signals(config: &NetworkConfig, shadowing_on: bool) -> Result<SignalDecomposition> {
    let records = run_all(config, Association::BestServer, shadowing_on)?;
    let mut useful_db = Vec::new();
    let mut interference_db = Vec::new();
    let mut n_skipped = 0u64;
    for record in &records {
        if record.empty_layout {
            n_skipped += config.ue_grid_count as u64;
            continue;
        }
        for ue in &record.per_ue {
            if ue.useful_db.is_finite() && ue.interference_db.is_finite() {
                useful_db.push(ue.useful_db);
                interference_db.push(ue.interference_db);
            } else {
                n_skipped += 1;
            }
        }
    }
    if useful_db.is_empty() {
        return Err(Error::EmptyCampaign);
    }
    Ok(SignalDecomposition {
        useful_db,
        interference_db,
        n_skipped,
    })
}

/// Empirical CDF of a campaign's samples.
pub fn empirical_cdf(samples: &SinrSampleSet) -> Result<EmpiricalCdf> {
    EmpiricalCdf::from_samples(&samples.samples_db)
}

/// Horizontal distance between two CDFs at matched probability levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftProfile {
    pub probs: Vec<f64>,
    pub shifts_db: Vec<f64>,
    pub max_abs_db: f64,
    /// Probability level where the maximum is attained.
    pub argmax_p: f64,
}

/// Max over a 0.01-step probability grid of |q_a(p) - q_b(p)|.
pub fn cdf_horizontal_shift_db(
    cdf_a: &dyn QuantileFn,
    cdf_b: &dyn QuantileFn,
    p_lo: f64,
    p_hi: f64,
) -> Result<ShiftProfile> {
    if !(p_lo > 0.0 && p_lo < p_hi && p_hi < 1.0) {
        return Err(Error::Domain(format!(
            "probability range [{p_lo}, {p_hi}] invalid"
        )));
    }
    let mut probs = Vec::new();
    let mut shifts_db = Vec::new();
    let mut max_abs_db = 0.0f64;
    let mut argmax_p = p_lo;
    let steps = ((p_hi - p_lo) / 0.01 + 1e-9).floor() as usize;
    for k in 0..=steps {
        let p = p_lo + 0.01 * k as f64;
        let shift = cdf_a.quantile_db(p) - cdf_b.quantile_db(p);
        if shift.abs() > max_abs_db {
            max_abs_db = shift.abs();
            argmax_p = p;
        }
        probs.push(p);
        shifts_db.push(shift);
    }
    Ok(ShiftProfile {
        probs,
        shifts_db,
        max_abs_db,
        argmax_p,
    })
}

/// F(threshold): the probability a sample falls at or below the threshold.
pub fn outage_probability(cdf: &EmpiricalCdf, threshold_db: f64) -> f64 {
    cdf.cdf(threshold_db)
}

/// Approximate half-width of a confidence interval for the p-quantile,
/// from the order-statistic normal approximation with a finite-difference
/// density estimate. `z` is the standard-normal quantile of the
/// confidence level (2.576 for 99%).
pub fn quantile_half_width(cdf: &EmpiricalCdf, p: f64, z: f64) -> f64 {
    let n = cdf.len() as f64;
    let dp = 0.02f64.min(p / 2.0).min((1.0 - p) / 2.0);
    let slope = (cdf.quantile(p + dp) - cdf.quantile(p - dp)) / (2.0 * dp);
    z * (p * (1.0 - p) / n).sqrt() * slope.abs().max(1e-12)
}

/// Half-width for the difference of the same quantile between two
/// independent sample sets.
pub fn two_sample_quantile_half_width(
    cdf_a: &EmpiricalCdf,
    cdf_b: &EmpiricalCdf,
    p: f64,
    z: f64,
) -> f64 {
    let a = quantile_half_width(cdf_a, p, z);
    let b = quantile_half_width(cdf_b, p, z);
    (a * a + b * b).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_config() -> NetworkConfig {
        NetworkConfig {
            n_runs: 40,
            ue_grid_count: 50,
            seed: 11,
            ..Default::default()
        }
    }

    #[test]
    fn empirical_cdf_examples() {
        let cdf = EmpiricalCdf::from_samples(&[0.0]).unwrap();
        for p in [0.01, 0.5, 0.99] {
            assert_eq!(cdf.quantile(p), 0.0);
        }

        let cdf = EmpiricalCdf::from_samples(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(cdf.quantile(0.5), 2.0);

        let mut prev = f64::NEG_INFINITY;
        for i in 1..100 {
            let q = cdf.quantile(i as f64 / 100.0);
            assert!(q >= prev);
            prev = q;
        }

        assert!(EmpiricalCdf::from_samples(&[]).is_err());
    }

    #[test]
    fn outage_support_edges_and_round_trip() {
        let cdf = EmpiricalCdf::from_samples(&[-3.0, -1.0, 0.5, 2.0]).unwrap();
        assert_eq!(outage_probability(&cdf, -10.0), 0.0);
        assert_eq!(outage_probability(&cdf, 10.0), 1.0);
        assert_eq!(outage_probability(&cdf, -1.0), 0.5);

        for i in 0..50 {
            let t = -3.0 + 5.0 * i as f64 / 49.0;
            let p = outage_probability(&cdf, t);
            if p > 0.0 {
                assert!(cdf.quantile(p.min(0.999)) <= t + 1e-12);
            }
        }
    }

    #[test]
    fn shift_of_identical_cdfs_is_zero() {
        let samples: Vec<f64> = (0..500).map(|i| i as f64 / 25.0).collect();
        let cdf = EmpiricalCdf::from_samples(&samples).unwrap();
        let profile = cdf_horizontal_shift_db(&cdf, &cdf, 0.05, 0.95).unwrap();
        assert_eq!(profile.max_abs_db, 0.0);
    }

    #[test]
    fn shift_detects_pure_translation() {
        let samples: Vec<f64> = (0..5000).map(|i| (i as f64).sqrt()).collect();
        let shifted: Vec<f64> = samples.iter().map(|s| s + 1.3).collect();
        let a = EmpiricalCdf::from_samples(&samples).unwrap();
        let b = EmpiricalCdf::from_samples(&shifted).unwrap();
        let profile = cdf_horizontal_shift_db(&b, &a, 0.05, 0.95).unwrap();
        assert_relative_eq!(profile.max_abs_db, 1.3, epsilon = 1e-9);
        for s in profile.shifts_db {
            assert_relative_eq!(s, 1.3, epsilon = 1e-9);
        }
    }

    #[test]
    fn campaign_bookkeeping_and_determinism() {
        let cfg = small_config();
        let a = run_campaign(&cfg, Association::BestServer, false).unwrap();
        assert_eq!(
            a.samples_db.len() as u64 + a.n_skipped,
            (cfg.n_runs * cfg.ue_grid_count) as u64
        );

        let b = run_campaign(&cfg, Association::BestServer, false).unwrap();
        assert_eq!(a.samples_db, b.samples_db);
    }

    #[test]
    fn campaign_independent_of_worker_count() {
        let cfg = small_config();
        let pool1 = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap();
        let a = pool1.install(|| run_campaign(&cfg, Association::BestServer, true).unwrap());
        let b = pool8.install(|| run_campaign(&cfg, Association::BestServer, true).unwrap());
        let bits_a: Vec<u64> = a.samples_db.iter().map(|s| s.to_bits()).collect();
        let bits_b: Vec<u64> = b.samples_db.iter().map(|s| s.to_bits()).collect();
        assert_eq!(bits_a, bits_b);
        assert_eq!(a.n_skipped, b.n_skipped);
    }

    #[test]
    fn no_shadowing_campaigns_identical_across_association() {
        let cfg = small_config();
        let near = run_campaign(&cfg, Association::Nearest, false).unwrap();
        let best = run_campaign(&cfg, Association::BestServer, false).unwrap();
        let bits_a: Vec<u64> = near.samples_db.iter().map(|s| s.to_bits()).collect();
        let bits_b: Vec<u64> = best.samples_db.iter().map(|s| s.to_bits()).collect();
        assert_eq!(bits_a, bits_b);
    }

    #[test]
    fn decomposition_matches_campaign_identity() {
        let cfg = NetworkConfig {
            sigma_db: 6.0,
            ..small_config()
        };
        let campaign = run_campaign(&cfg, Association::BestServer, true).unwrap();
        let decomp = decompose_signals(&cfg, true).unwrap();
        assert_eq!(campaign.samples_db.len(), decomp.useful_db.len());
        assert_eq!(campaign.n_skipped, decomp.n_skipped);
        for ((&s, &u), &i) in campaign
            .samples_db
            .iter()
            .zip(&decomp.useful_db)
            .zip(&decomp.interference_db)
        {
            assert!((s - (u - i)).abs() < 1e-9, "identity broken: {s} vs {u} - {i}");
        }
    }

    #[test]
    fn lattice_grid_has_requested_size_and_stays_inside() {
        let cfg = NetworkConfig {
            ue_grid: UeGrid::Lattice,
            ue_grid_count: 37,
            ..Default::default()
        };
        let grid = ue_positions(&cfg);
        assert_eq!(grid.len(), 37);
        for p in grid {
            assert!(p.x >= 0.0 && p.x < cfg.side());
            assert!(p.y >= 0.0 && p.y < cfg.side());
        }
    }

    #[test]
    fn ue_grid_is_fixed_across_runs_and_campaigns() {
        let cfg = small_config();
        let g1 = ue_positions(&cfg);
        let g2 = ue_positions(&cfg);
        assert_eq!(g1, g2);
    }

    #[test]
    fn skipped_samples_counted_for_empty_layouts() {
        // mean count so small that most layouts are empty
        let cfg = NetworkConfig {
            mean_bs_count: 0.05,
            n_runs: 200,
            ue_grid_count: 4,
            noise_nth: 1e-16,
            seed: 3,
            ..Default::default()
        };
        let set = run_campaign(&cfg, Association::BestServer, false).unwrap();
        assert!(set.n_skipped > 0);
        assert_eq!(
            set.samples_db.len() as u64 + set.n_skipped,
            (cfg.n_runs * cfg.ue_grid_count) as u64
        );
    }

    #[test]
    fn all_empty_campaign_errors() {
        let cfg = NetworkConfig {
            mean_bs_count: 1e-12,
            n_runs: 10,
            ue_grid_count: 4,
            ..Default::default()
        };
        assert!(matches!(
            run_campaign(&cfg, Association::BestServer, false),
            Err(Error::EmptyCampaign)
        ));
    }
}
