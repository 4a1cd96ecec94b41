//! Deterministic random streams for the Monte Carlo routines.
//!
//! Each independent unit of work (a trial, a trial/period pair, a
//! trial/vendor pair) draws from its own generator, so results do not depend
//! on scheduling and parallel runs match sequential ones bit for bit.
//!
//! Seed derivation, for a master seed `m` and an index path `[i0, i1, ..]`:
//!
//! ```text
//! h = mix64(m + GAMMA)
//! for each i in path:  h = mix64(h ^ mix64(i + GAMMA))
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer and `GAMMA = 0x9E3779B97F4A7C15`
//! (all arithmetic wrapping). The stream itself is xoshiro256++ whose 256-bit
//! state is filled from `h` by SplitMix64. A uniform draw in `[0, 1)` takes the
//! top 53 bits of the next output: `(next_u64 >> 11) * 2^-53`.

use rand::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(master.wrapping_add(GAMMA)), |h, &i| {
            mix64(h ^ mix64(i.wrapping_add(GAMMA)))
        })
}

#[derive(Debug, Clone)]
pub struct Stream(Xoshiro256PlusPlus);

impl Stream {
    pub fn new(master: u64, path: &[u64]) -> Self {
        Stream(Xoshiro256PlusPlus::seed_from_u64(derive_seed(master, path)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.0)
    }
}
