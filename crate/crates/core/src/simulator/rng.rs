//! Counter-based standard normals.
//!
//! Every `(k, j)` block owns a ChaCha8 stream keyed by the seed and numbered
//! `k << 32 | j`. Each normal consumes exactly two 64-bit words, so the
//! value at a given position in a block never depends on how many other
//! blocks were drawn or in which order.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `rep` derived from a master seed.
pub fn derive_seed(seed: u64, rep: u64) -> u64 {
    splitmix64(seed ^ splitmix64(rep.wrapping_add(0x5EED)))
}

fn key(seed: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    let mut z = seed;
    for chunk in out.chunks_exact_mut(8) {
        z = splitmix64(z);
        chunk.copy_from_slice(&z.to_le_bytes());
    }
    out
}

/// Normal stream for block `(k, j)`.
pub struct BlockStream {
    rng: ChaCha8Rng,
}

impl BlockStream {
    pub fn new(seed: u64, k: usize, j: usize) -> Self {
        let mut rng = ChaCha8Rng::from_seed(key(seed));
        rng.set_stream(((k as u64) << 32) | j as u64);
        Self { rng }
    }

    /// Box-Muller, cosine branch only: two words per normal.
    #[inline]
    pub fn normal(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        let u1 = ((self.rng.next_u64() >> 11) as f64 + 0.5) * SCALE;
        let u2 = ((self.rng.next_u64() >> 11) as f64 + 0.5) * SCALE;
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }
}
