//! Seed-derived random streams.
//!
//! Every stream is a ChaCha stream derived from the campaign master seed,
//! so results never depend on worker count or scheduling. Layout and
//! shadowing use distinct streams per run: toggling shadowing on or off
//! leaves the drawn layouts untouched, which keeps paired campaigns
//! (with/without shadowing) on common random numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const UE_GRID_STREAM: u64 = u64::MAX;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Stream for drawing the fixed UE grid (consumed once per campaign).
pub fn ue_grid_stream(seed: u64) -> ChaCha8Rng {
    stream(seed, UE_GRID_STREAM)
}

/// Stream for the base-station layout of one run.
pub fn layout_stream(seed: u64, run: u64) -> ChaCha8Rng {
    debug_assert!(run < u64::MAX / 2);
    stream(seed, 2 * run)
}

/// Stream for the shadowing draws of one run.
pub fn shadowing_stream(seed: u64, run: u64) -> ChaCha8Rng {
    debug_assert!(run < u64::MAX / 2);
    stream(seed, 2 * run + 1)
}
