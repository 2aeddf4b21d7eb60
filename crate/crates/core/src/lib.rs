//! Exact computations on inverse towers of abelian groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`abelian`]: finitely generated abelian groups, homomorphisms, kernels,
//!   images and quotients via Smith normal form.
//! * [`towers`]: finite-horizon inverse towers, image filtrations,
//!   Mittag-Leffler detection, `lim`/`lim¹` classification, six-term
//!   exactness checks and residue towers.
//! * [`prufer`]: exact arithmetic in a finite window of `∏ Z/p^∞`, the
//!   diagonal copy of `Z` and the CRT reduction into the stable image.
//! * [`delta`]: the alternating binomial sums `δ_n(k)` with an independent
//!   Stirling-number cross-check.
//! * [`random`] and [`brute`]: seeded instance generators and enumeration
//!   oracles used by the verification suites.
//!
//! Every statement about an infinite tower is made at a finite horizon; no
//! operation claims an infinitary fact it cannot witness.

pub mod abelian;
pub mod brute;
pub mod delta;
mod error;
pub mod primes;
pub mod prufer;
pub mod random;
pub mod towers;

pub use abelian::{FgAbGroup, GroupElement, Homomorphism, Matrix, Subgroup};
pub use error::{Error, Result};
pub use towers::Tower;
