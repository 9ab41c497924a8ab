//! Seed derivation and Rademacher draws.
//!
//! Every random stream is keyed by `(seed, path...)` through a splitmix64
//! chain, so the vector drawn for sample `i` never depends on how many other
//! samples were drawn before it or in what order they were evaluated.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from `seed` and a path of stream identifiers.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(seed), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// Generator for the stream identified by `(seed, path)`.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, path))
}

/// Stream tags, kept distinct so unrelated draws never share a stream.
pub(crate) mod tag {
    pub const HUTCHINSON: u64 = 1;
    pub const SKETCH: u64 = 2;
    pub const ROUND: u64 = 3;
    pub const BASELINE: u64 = 4;
    pub const TARGETS: u64 = 5;
    pub const TRACE: u64 = 6;
}

/// Fill `out` with independent ±1 entries, 64 signs per generator word.
pub fn fill_rademacher<R: RngCore>(rng: &mut R, out: &mut [f64]) {
    for chunk in out.chunks_mut(64) {
        let mut bits = rng.next_u64();
        for x in chunk.iter_mut() {
            *x = if bits & 1 == 1 { 1.0 } else { -1.0 };
            bits >>= 1;
        }
    }
}

/// The `index`-th Rademacher vector of length `n` in the stream `(seed, tag)`.
pub fn rademacher(n: usize, seed: u64, tag: u64, index: u64) -> Vec<f64> {
    let mut out = vec![0.0; n];
    fill_rademacher(&mut stream(seed, &[tag, index]), &mut out);
    out
}
