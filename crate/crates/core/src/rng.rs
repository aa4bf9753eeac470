use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable random stream. Identical seeds give bit-identical draw
/// sequences on every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Stream for run `k` of an experiment whose base seed is `base`.
    pub fn for_run(base: u64, k: u64) -> Self {
        Self::new(base.wrapping_add(k))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw in `[lo, hi]`.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        (lo + self.uniform() * (hi - lo)).clamp(lo, hi)
    }

    /// Uniform index in `0..n`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Fair coin.
    #[inline]
    pub fn coin(&mut self) -> bool {
        self.uniform() < 0.5
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}
