//! Shared helpers for the strategy benchmarks.

use spincover_core::corpus::{random_so_plus, rng_from_seed};
use spincover_core::group::Signature;
use spincover_core::mat::Mat;

/// A fixed corpus of targets per signature, independent of bench ordering.
pub fn corpus(sig: Signature, count: usize) -> Vec<Mat<f64>> {
    let mut rng = rng_from_seed(0xbe9c);
    (0..count)
        .map(|_| random_so_plus(sig, sig.n() * (sig.n() - 1) / 2, &mut rng))
        .collect()
}
