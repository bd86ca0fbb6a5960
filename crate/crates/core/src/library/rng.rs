//! Seeded random streams.
//!
//! The bit generator is ChaCha8 from `rand_chacha` 0.3, seeded through
//! `SeedableRng::seed_from_u64`. The conversions from raw 64-bit words to
//! reals, bounded integers and normals are implemented here rather than
//! delegated to `rand` distributions, so the draw sequence is pinned by this
//! file alone:
//!
//! * `uniform`: the top 53 bits of one word, scaled by `2^-53`.
//! * `below(n)`: Lemire's widening multiply with rejection (unbiased).
//! * `normal`: Box-Muller on two uniforms, cosine branch only.
//!
//! Uniforms and integers are bit-identical on every platform. Normals go
//! through `ln`/`cos` and are therefore only as portable as the host libm.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier recorded in dataset manifests.
pub const RNG_ALGORITHM: &str = "chacha8/rand_chacha-0.3/seed_from_u64;fdif-draws-v1";

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer; a bijection on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for sample `index` of a dataset with the given master seed.
///
/// `mix64(master ^ mix64(GOLDEN * (index + 1)))`. Every step is a bijection,
/// so for a fixed master seed distinct indices never collide.
pub fn derive_sample_seed(master_seed: u64, sample_index: u64) -> u64 {
    let salted = mix64(sample_index.wrapping_add(1).wrapping_mul(GOLDEN));
    mix64(master_seed ^ salted)
}

/// Seed for an auxiliary stream (subset selection and the like) that must not
/// overlap the per-sample streams.
pub fn derive_aux_seed(master_seed: u64, domain: &str) -> u64 {
    let tag = domain
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    mix64(mix64(master_seed) ^ tag ^ GOLDEN.rotate_left(17))
}

/// A deterministic stream of random draws.
#[derive(Clone, Debug)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`; returns `lo` when the interval is empty.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `[0, n)`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Uniform integer in the inclusive range `[lo, hi]`.
    pub fn int_in(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Draws `k` distinct indices from `[0, n)` in draw order (partial
    /// Fisher-Yates).
    pub fn choose_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
