//! Seeded randomness. Every stream is ChaCha8 keyed by the little-endian
//! seed (zero-padded to 32 bytes) with a fixed stream number per purpose,
//! so a seed reproduces the same graph, identifiers and samples on every
//! platform. Bounded draws use rejection sampling on raw `u64` output
//! rather than a library distribution, keeping the mapping fixed.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Independent streams derived from one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Graph = 0,
    Ids = 1,
    Roots = 2,
    Search = 3,
}

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64, stream: Stream) -> Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(stream as u64);
        Rng(inner)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Bernoulli trial comparing the top 53 bits against `p * 2^53`.
    #[inline]
    pub fn chance(&mut self, threshold53: u64) -> bool {
        (self.next_u64() >> 11) < threshold53
    }

    /// Uniform in `0..bound`; `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates, from the last index down.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }

    /// Uniform permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }

    /// `k` distinct values from `0..n` in draw order (`k <= n`).
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        let mut p: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            p.swap(i, j);
        }
        p.truncate(k);
        p
    }
}

/// `p * 2^53` rounded down, for use with [`Rng::chance`].
pub fn threshold53(p: f64) -> u64 {
    (p * (1u64 << 53) as f64) as u64
}

/// Identifier assignment: a uniform permutation of `1..=n` from the `Ids`
/// stream of `seed`.
pub fn random_ids(n: usize, seed: u64) -> Vec<u32> {
    Rng::new(seed, Stream::Ids).permutation(n).into_iter().map(|x| x as u32 + 1).collect()
}

pub fn identity_ids(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}
