//! Poisson base-station layouts on a square torus.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::{Error, Result};

/// A position in the simulated area, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// One realization of base-station positions on the square torus.
#[derive(Debug, Clone, PartialEq)]
pub struct BsLayout {
    pub positions: Vec<Point>,
    /// Torus side length in meters.
    pub side: f64,
}

impl BsLayout {
    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Density for which the expected nearest-neighbor distance of a 2-D
/// Poisson process, 1/(2√ρ), equals the half inter-site distance.
pub fn derive_density(half_isd_rc: f64) -> Result<f64> {
    if !(half_isd_rc.is_finite() && half_isd_rc > 0.0) {
        return Err(Error::InvalidParameter {
            name: "half_isd_rc",
            reason: format!("must be a positive length, got {half_isd_rc}"),
        });
    }
    Ok(derive_density_unchecked(half_isd_rc))
}

pub(crate) fn derive_density_unchecked(half_isd_rc: f64) -> f64 {
    1.0 / (4.0 * half_isd_rc * half_isd_rc)
}

/// Density of a hexagonal grid with inter-site distance 2 R_c, provided
/// as an alternative mapping for the density override.
pub fn hexagonal_density(half_isd_rc: f64) -> Result<f64> {
    if !(half_isd_rc.is_finite() && half_isd_rc > 0.0) {
        return Err(Error::InvalidParameter {
            name: "half_isd_rc",
            reason: format!("must be a positive length, got {half_isd_rc}"),
        });
    }
    Ok(1.0 / (2.0 * 3f64.sqrt() * half_isd_rc * half_isd_rc))
}

/// Draws one Poisson layout: count ~ Poisson(mean_bs_count), positions
/// i.i.d. uniform on [0, side)². A drawn count of zero is legal output.
pub fn sample_layout<R: Rng + ?Sized>(config: &NetworkConfig, rng: &mut R) -> BsLayout {
    let side = config.side();
    let poisson = Poisson::new(config.mean_bs_count).expect("validated mean_bs_count");
    let count = poisson.sample(rng) as usize;
    let positions = (0..count)
        .map(|_| Point::new(rng.random::<f64>() * side, rng.random::<f64>() * side))
        .collect();
    BsLayout { positions, side }
}

/// Euclidean distance with per-axis wrap-around.
pub fn torus_distance(p: Point, q: Point, side: f64) -> f64 {
    let dx = wrap_delta(p.x - q.x, side);
    let dy = wrap_delta(p.y - q.y, side);
    dx.hypot(dy)
}

fn wrap_delta(delta: f64, side: f64) -> f64 {
    let d = delta.abs();
    d.min(side - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, DiscreteCDF};

    #[test]
    fn density_examples() {
        assert_eq!(derive_density(0.5).unwrap(), 1.0);
        assert_eq!(derive_density(1.0).unwrap(), 0.25);
        assert!(derive_density(0.0).is_err());
        assert!(derive_density(-1.0).is_err());
    }

    #[test]
    fn hexagonal_density_differs_from_default() {
        let hexa = hexagonal_density(1.0).unwrap();
        assert!((hexa - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!(hexa > derive_density(1.0).unwrap());
    }

    #[test]
    fn torus_distance_identity_and_wrap() {
        let side = 10.0;
        let p = Point::new(3.0, 4.0);
        assert_eq!(torus_distance(p, p, side), 0.0);

        let eps = 1e-3;
        let a = Point::new(0.0, 0.0);
        let b = Point::new(side - eps, 0.0);
        assert!((torus_distance(a, b, side) - eps).abs() < 1e-12);
    }

    /// Brute-force oracle: minimum over the 9 periodic images.
    fn nine_image_distance(p: Point, q: Point, side: f64) -> f64 {
        let mut best = f64::INFINITY;
        for ix in -1..=1 {
            for iy in -1..=1 {
                let dx = p.x - (q.x + ix as f64 * side);
                let dy = p.y - (q.y + iy as f64 * side);
                best = best.min(dx.hypot(dy));
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_nine_image_oracle(
            px in 0.0..100.0f64, py in 0.0..100.0f64,
            qx in 0.0..100.0f64, qy in 0.0..100.0f64,
        ) {
            let side = 100.0;
            let d = torus_distance(Point::new(px, py), Point::new(qx, qy), side);
            let oracle = nine_image_distance(Point::new(px, py), Point::new(qx, qy), side);
            prop_assert!((d - oracle).abs() < 1e-9);
            prop_assert!(d <= side / 2f64.sqrt() + 1e-9);
        }

        #[test]
        fn symmetric_and_triangle(
            ax in 0.0..50.0f64, ay in 0.0..50.0f64,
            bx in 0.0..50.0f64, by in 0.0..50.0f64,
            cx in 0.0..50.0f64, cy in 0.0..50.0f64,
        ) {
            let side = 50.0;
            let a = Point::new(ax, ay);
            let b = Point::new(bx, by);
            let c = Point::new(cx, cy);
            let ab = torus_distance(a, b, side);
            let ba = torus_distance(b, a, side);
            prop_assert_eq!(ab, ba);
            let bc = torus_distance(b, c, side);
            let ac = torus_distance(a, c, side);
            prop_assert!(ac <= ab + bc + 1e-9);
        }

        #[test]
        fn translation_invariant_mod_side(
            ax in 0.0..50.0f64, ay in 0.0..50.0f64,
            bx in 0.0..50.0f64, by in 0.0..50.0f64,
            tx in 0.0..50.0f64, ty in 0.0..50.0f64,
        ) {
            let side = 50.0;
            let shift = |p: Point| Point::new((p.x + tx) % side, (p.y + ty) % side);
            let a = Point::new(ax, ay);
            let b = Point::new(bx, by);
            let d0 = torus_distance(a, b, side);
            let d1 = torus_distance(shift(a), shift(b), side);
            prop_assert!((d0 - d1).abs() < 1e-9);
        }
    }

    #[test]
    fn layout_positions_inside_area() {
        let cfg = NetworkConfig::default();
        let mut rng = rng::layout_stream(cfg.seed, 0);
        let layout = sample_layout(&cfg, &mut rng);
        let side = cfg.side();
        assert_eq!(layout.side, side);
        for p in &layout.positions {
            assert!(p.x >= 0.0 && p.x < side);
            assert!(p.y >= 0.0 && p.y < side);
        }
    }

    #[test]
    fn zero_mean_limit_draws_zero_count() {
        let cfg = NetworkConfig {
            mean_bs_count: 1e-9,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(sample_layout(&cfg, &mut rng).count(), 0);
        }
    }

    #[test]
    fn count_mean_and_variance_match_poisson() {
        let cfg = NetworkConfig::default();
        let n_draws = 100_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let counts: Vec<f64> = (0..n_draws)
            .map(|_| sample_layout(&cfg, &mut rng).count() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / n_draws as f64;
        assert!(
            (mean - 50.0).abs() < 0.5,
            "sample mean {mean} deviates from 50"
        );

        let var = counts.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>()
            / (n_draws as f64 - 1.0);
        // Var(s²) ≈ (µ4 − σ⁴)/n = (λ + 3λ² − λ²)/n gives sd ≈ 0.22 here.
        assert!(
            (var - 50.0).abs() < 1.0,
            "sample variance {var} deviates from 50"
        );
    }

    #[test]
    fn count_distribution_chi_square_vs_poisson() {
        let cfg = NetworkConfig::default();
        let n_draws = 100_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut observed = vec![0u64; 200];
        for _ in 0..n_draws {
            let c = sample_layout(&cfg, &mut rng).count().min(199);
            observed[c] += 1;
        }

        let pois = statrs::distribution::Poisson::new(50.0).unwrap();
        // Pool k <= 30 and k >= 72 so every expected count stays well above 5.
        let lo = 30u64;
        let hi = 72u64;
        let mut bins: Vec<(f64, f64)> = Vec::new();
        let tail_lo: f64 = (0..=lo).map(|k| pois.pmf(k)).sum();
        let obs_lo: u64 = observed[..=lo as usize].iter().sum();
        bins.push((obs_lo as f64, tail_lo * n_draws as f64));
        for k in lo + 1..hi {
            bins.push((observed[k as usize] as f64, pois.pmf(k) * n_draws as f64));
        }
        let tail_hi = 1.0 - pois.cdf(hi - 1);
        let obs_hi: u64 = observed[hi as usize..].iter().sum();
        bins.push((obs_hi as f64, tail_hi * n_draws as f64));

        let stat: f64 = bins
            .iter()
            .map(|(o, e)| (o - e) * (o - e) / e)
            .sum();
        let dof = (bins.len() - 1) as f64;
        let critical = ChiSquared::new(dof).unwrap().inverse_cdf(0.99);
        assert!(
            stat < critical,
            "chi-square {stat:.2} exceeds critical {critical:.2} at dof {dof}"
        );
    }

    #[test]
    fn positions_uniformity_chi_square() {
        let cfg = NetworkConfig::default();
        let side = cfg.side();
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut counts = [[0u64; 10]; 10];
        let mut total = 0u64;
        for _ in 0..2000 {
            let layout = sample_layout(&cfg, &mut rng);
            for p in &layout.positions {
                let ix = ((p.x / side * 10.0) as usize).min(9);
                let iy = ((p.y / side * 10.0) as usize).min(9);
                counts[ix][iy] += 1;
                total += 1;
            }
        }
        let expected = total as f64 / 100.0;
        let stat: f64 = counts
            .iter()
            .flatten()
            .map(|&o| {
                let d = o as f64 - expected;
                d * d / expected
            })
            .sum();
        let critical = ChiSquared::new(99.0).unwrap().inverse_cdf(0.99);
        assert!(stat < critical, "uniformity chi-square {stat:.2} >= {critical:.2}");
    }

    #[test]
    fn mean_nearest_bs_distance_matches_half_isd() {
        // The density mapping is exactly the identity E[nearest distance]
        // = 1/(2√ρ) = R_c; estimated from the contact distance of a fixed
        // probe point over many layouts.
        let cfg = NetworkConfig::default();
        let side = cfg.side();
        let probe = Point::new(side / 2.0, side / 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n_layouts = 20_000usize;
        let mut sum = 0.0;
        let mut kept = 0usize;
        for _ in 0..n_layouts {
            let layout = sample_layout(&cfg, &mut rng);
            if layout.is_empty() {
                continue;
            }
            let d = layout
                .positions
                .iter()
                .map(|&bs| torus_distance(probe, bs, side))
                .fold(f64::INFINITY, f64::min);
            sum += d;
            kept += 1;
        }
        let mean = sum / kept as f64;
        let rc = cfg.half_isd_rc;
        assert!(
            (mean - rc).abs() < 0.02 * rc,
            "mean nearest distance {mean:.2} m outside 2% of {rc} m"
        );
    }
}
