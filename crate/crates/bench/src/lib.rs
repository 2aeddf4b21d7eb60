//! Fixed inputs shared by the benchmarks.

use num_bigint::BigInt;
use towerlim_core::prufer::{PrimeWindow, PruferClass, PruferElement};
use towerlim_core::{random, Matrix};

/// A deterministic batch of `count` random `dim x dim` matrices.
pub fn matrices(count: u64, dim: usize, bound: i64) -> Vec<Matrix> {
    (0..count)
        .map(|i| random::matrix(&mut random::rng(i), dim, dim, bound))
        .collect()
}

/// A deterministic batch of classes over at most `window` primes.
pub fn classes(count: u64, window: usize) -> Vec<PruferClass> {
    (0..count)
        .map(|i| random::prufer_class(&mut random::rng(i), window))
        .collect()
}

/// The class of `(1/2, 0, ..., 0)`.
pub fn half() -> PruferElement {
    PruferElement::from_tokens(
        &PrimeWindow::first(1),
        &[(BigInt::from(2), BigInt::from(1))],
    )
    .expect("1/2 is a valid coordinate")
}
