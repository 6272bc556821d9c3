//! Shared fixtures for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sfh_core::bits::BitVector;
use sfh_core::peg::{peg_construct, PegConfig};
use sfh_core::sparse::LdpcCode;

/// Rate-0.1 triangular code sized for quick decoder benchmarks.
pub fn bench_code() -> LdpcCode {
    peg_construct(&PegConfig {
        n: 1200,
        r: 1080,
        dv: 3,
        lower_triangular: true,
        seed: 1,
    })
    .expect("feasible bench configuration")
}

/// A noisy all-zero-codeword observation at the given flip density.
pub fn noisy_word(n: usize, p: f64, seed: u64) -> BitVector {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut y = BitVector::zeros(n);
    for i in 0..n {
        if rng.gen::<f64>() < p {
            y.set(i, true);
        }
    }
    y
}
