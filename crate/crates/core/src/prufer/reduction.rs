//! Membership in the image filtration `A_0^(n)` and the CRT reduction.
//!
//! A class lies in `A_0^(n)` iff it has a representative vanishing at the
//! first `n` primes. Subtracting `k·diag` changes the `i`-th coordinate by
//! `k/p_i`, so this is possible exactly when each of the first `n`
//! coordinates has order dividing its prime; `k` is then fixed mod `k(n)` by
//! the Chinese remainder theorem.

use num_bigint::BigInt;

use super::{order_divides_prime, PrimeWindow, PruferClass, PruferElement};
use crate::error::Result;
use crate::primes::crt;

/// A coordinate blocking membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMember {
    /// 1-based position in the window.
    pub index: usize,
    pub prime: u64,
    pub order: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `residual = rep - k·diag` vanishes at the first `n` primes, with the
    /// least such `k >= 0`.
    Member {
        k: BigInt,
        residual: PruferElement,
    },
    NotMember(NonMember),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

pub fn in_a0n(class: &PruferClass, n: usize) -> Result<Membership> {
    let rep = class.representative();
    let window = rep.window();
    window.check_index(n)?;
    let mut congruences = Vec::with_capacity(n);
    for i in 1..=n {
        let p = window.primes()[i - 1];
        let c = rep.coord(i);
        if !order_divides_prime(c) {
            return Ok(Membership::NotMember(NonMember {
                index: i,
                prime: p,
                order: c.order(p),
            }));
        }
        congruences.push((c.numerator().clone(), BigInt::from(p)));
    }
    let (k, _) = crt(&congruences);
    let shift = PruferElement::diag_embed(&k, window);
    let residual = rep.sub(&shift)?;
    assert!(
        residual.coords()[..n].iter().all(|c| c.is_zero()),
        "CRT solution must clear the first {n} coordinates"
    );
    assert_eq!(
        rep.sub(&residual)?,
        shift,
        "residual must differ from the input by an integer multiple of the diagonal"
    );
    Ok(Membership::Member { k, residual })
}

/// The representative with the first `n` coordinates cleared, or the
/// coordinate preventing it.
pub fn reduce_to_an(class: &PruferClass, n: usize) -> Result<Result<PruferElement, NonMember>> {
    Ok(match in_a0n(class, n)? {
        Membership::Member { residual, .. } => Ok(residual),
        Membership::NotMember(w) => Err(w),
    })
}

/// The least `k >= 0` with `rep - k·diag` vanishing at the first `n` primes.
pub fn minimal_reducer(class: &PruferClass, n: usize) -> Result<Option<BigInt>> {
    Ok(match in_a0n(class, n)? {
        Membership::Member { k, .. } => Some(k),
        Membership::NotMember(_) => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableMembership {
    /// Largest `n` (up to the window size) with the class in `A_0^(n)`.
    pub largest_n: usize,
    /// Every coordinate has order dividing its prime: the window's view of
    /// the stable image `A_0^(∞)`.
    pub all_primes: bool,
}

pub fn stable_membership(class: &PruferClass) -> StableMembership {
    let rep = class.representative();
    let largest_n = rep
        .coords()
        .iter()
        .position(|c| !order_divides_prime(c))
        .unwrap_or(rep.window().len());
    StableMembership {
        largest_n,
        all_primes: largest_n == rep.window().len(),
    }
}

/// Minimal reducers of `element` (extended by zeros) over the windows of the
/// first `N` primes, clearing all `N` coordinates.
pub fn growth_witness(
    element: &PruferElement,
    windows: impl IntoIterator<Item = usize>,
) -> Result<Vec<(usize, Option<BigInt>)>> {
    windows
        .into_iter()
        .map(|n| {
            let window = PrimeWindow::first(n.max(element.window().len()));
            let class = PruferClass::new(element.extend_to(&window)?);
            Ok((n, minimal_reducer(&class, n)?))
        })
        .collect()
}
