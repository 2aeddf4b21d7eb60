//! Exact arithmetic in `A = ∏_{p ∈ S} Z/p^∞` over a window `S` of the first
//! `N` primes, and in the quotient `A_0 = A / Z` by the diagonal
//! `k ↦ k·(1/2, 1/3, ..., 1/p_N)`.
//!
//! The coordinate at `p` is a rational `m/p^e` reduced mod 1, stored as the
//! pair `(m, e)` with `0 <= m < p^e` and `p ∤ m` (or `m = 0, e = 0`).

mod model;
mod reduction;

pub use model::{
    build_phantom_tower_model, truncated_prufer_ses, PhantomTowerModel, SubTowerModel,
};
pub use reduction::{
    growth_witness, in_a0n, minimal_reducer, reduce_to_an, stable_membership, Membership,
    NonMember, StableMembership,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::primes::{crt, first_primes, is_prime};

/// The first `N` primes, without gaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeWindow {
    primes: Vec<u64>,
}

impl PrimeWindow {
    pub fn first(n: usize) -> Self {
        PrimeWindow {
            primes: first_primes(n),
        }
    }

    pub fn from_primes(primes: Vec<u64>) -> Result<Self> {
        let expected = first_primes(primes.len());
        if primes != expected {
            return Err(Error::InvalidWindow(format!(
                "{primes:?} is not the list of the first {} primes",
                primes.len()
            )));
        }
        Ok(PrimeWindow { primes })
    }

    /// The smallest window containing `p`.
    pub fn covering(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut n = 1;
        loop {
            let w = PrimeWindow::first(n);
            if w.primes.last() == Some(&p) {
                return Ok(w);
            }
            n += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Largest prime in the window.
    pub fn largest(&self) -> Option<u64> {
        self.primes.last().copied()
    }

    pub fn position(&self, p: u64) -> Option<usize> {
        self.primes.iter().position(|&q| q == p)
    }

    /// `k(n)`, the product of the first `n` primes of the window.
    pub fn primorial(&self, n: usize) -> BigInt {
        self.primes[..n]
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * p)
    }

    pub(crate) fn check_index(&self, n: usize) -> Result<()> {
        if n > self.len() {
            Err(Error::IndexOutOfRange {
                index: n,
                max: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// One coordinate `numerator / p^exponent` of an element of `Z/p^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferCoord {
    numerator: BigInt,
    exponent: u32,
}

impl PruferCoord {
    pub fn zero() -> Self {
        PruferCoord {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    /// `m / p^e` reduced mod 1 and to lowest terms.
    pub fn new(p: u64, numerator: BigInt, exponent: u32) -> Self {
        let pb = BigInt::from(p);
        let mut m = numerator.mod_floor(&pb.pow(exponent));
        let mut e = exponent;
        if m.is_zero() {
            return PruferCoord::zero();
        }
        while e > 0 && m.is_multiple_of(&pb) {
            m /= &pb;
            e -= 1;
        }
        PruferCoord {
            numerator: m,
            exponent: e,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Order `p^e` of the coordinate in `Z/p^∞`.
    pub fn order(&self, p: u64) -> BigInt {
        BigInt::from(p).pow(self.exponent)
    }

    fn add(&self, other: &PruferCoord, p: u64) -> PruferCoord {
        let e = self.exponent.max(other.exponent);
        let pb = BigInt::from(p);
        let m = &self.numerator * pb.pow(e - self.exponent)
            + &other.numerator * pb.pow(e - other.exponent);
        PruferCoord::new(p, m, e)
    }

    fn scale(&self, k: &BigInt, p: u64) -> PruferCoord {
        PruferCoord::new(p, &self.numerator * k, self.exponent)
    }
}

/// An element of `∏_{p ∈ window} Z/p^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferElement {
    window: PrimeWindow,
    coords: Vec<PruferCoord>,
}

impl PruferElement {
    pub fn zero(window: &PrimeWindow) -> Self {
        PruferElement {
            window: window.clone(),
            coords: vec![PruferCoord::zero(); window.len()],
        }
    }

    /// From `(numerator, exponent)` per prime of the window, in order.
    pub fn new(window: &PrimeWindow, coords: &[(BigInt, u32)]) -> Result<Self> {
        if coords.len() != window.len() {
            return Err(Error::DimensionMismatch {
                expected: window.len(),
                found: coords.len(),
            });
        }
        let coords = window
            .primes
            .iter()
            .zip(coords)
            .map(|(&p, (m, e))| PruferCoord::new(p, m.clone(), *e))
            .collect();
        Ok(PruferElement {
            window: window.clone(),
            coords,
        })
    }

    /// From `(p^e, m)` tokens meaning `m / p^e`; primes not mentioned are zero.
    pub fn from_tokens(window: &PrimeWindow, tokens: &[(BigInt, BigInt)]) -> Result<Self> {
        let mut x = PruferElement::zero(window);
        for (q, m) in tokens {
            let (p, e) = prime_power(q)?;
            let i = window.position(p).ok_or_else(|| {
                Error::InvalidCoordinate(format!(
                    "prime {p} is outside the window of {} primes",
                    window.len()
                ))
            })?;
            let c = PruferCoord::new(p, m.clone(), e);
            x.coords[i] = x.coords[i].add(&c, p);
        }
        Ok(x)
    }

    /// `k·(1/2, 1/3, ..., 1/p_N)`.
    pub fn diag_embed(k: &BigInt, window: &PrimeWindow) -> Self {
        let coords = window
            .primes
            .iter()
            .map(|&p| PruferCoord::new(p, k.clone(), 1))
            .collect();
        PruferElement {
            window: window.clone(),
            coords,
        }
    }

    pub fn window(&self) -> &PrimeWindow {
        &self.window
    }

    pub fn coords(&self) -> &[PruferCoord] {
        &self.coords
    }

    /// Coordinate at the `i`-th prime, 1-based.
    pub fn coord(&self, i: usize) -> &PruferCoord {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PruferCoord::is_zero)
    }

    pub fn support(&self) -> Vec<u64> {
        self.window
            .primes
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&p, _)| p)
            .collect()
    }

    fn check_window(&self, other: &PruferElement) -> Result<()> {
        if self.window != other.window {
            return Err(Error::InvalidWindow(
                "elements over different windows".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &PruferElement) -> Result<PruferElement> {
        self.check_window(other)?;
        let coords = self
            .window
            .primes
            .iter()
            .zip(self.coords.iter().zip(&other.coords))
            .map(|(&p, (a, b))| a.add(b, p))
            .collect();
        Ok(PruferElement {
            window: self.window.clone(),
            coords,
        })
    }

    pub fn scale(&self, k: &BigInt) -> PruferElement {
        let coords = self
            .window
            .primes
            .iter()
            .zip(&self.coords)
            .map(|(&p, c)| c.scale(k, p))
            .collect();
        PruferElement {
            window: self.window.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> PruferElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &PruferElement) -> Result<PruferElement> {
        self.add(&other.neg())
    }

    /// The same coordinates over a larger window, padded with zeros.
    pub fn extend_to(&self, window: &PrimeWindow) -> Result<PruferElement> {
        if window.len() < self.window.len()
            || window.primes[..self.window.len()] != self.window.primes[..]
        {
            return Err(Error::InvalidWindow(
                "target window does not extend the source".into(),
            ));
        }
        let mut coords = self.coords.clone();
        coords.resize(window.len(), PruferCoord::zero());
        Ok(PruferElement {
            window: window.clone(),
            coords,
        })
    }

    /// Canonical literal: `q:m` tokens (`q = p^e`) in ascending prime order,
    /// or `0` for the zero element.
    pub fn literal(&self) -> String {
        let tokens: Vec<String> = self
            .window
            .primes
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&p, c)| format!("{}:{}", c.order(p), c.numerator))
            .collect();
        if tokens.is_empty() {
            "0".into()
        } else {
            tokens.join(",")
        }
    }
}

impl fmt::Display for PruferElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .window
            .primes
            .iter()
            .zip(&self.coords)
            .map(|(&p, c)| {
                if c.is_zero() {
                    "0".into()
                } else {
                    format!("{}/{}", c.numerator, c.order(p))
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Splits `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(q: &BigInt) -> Result<(u64, u32)> {
    let bad = || Error::InvalidCoordinate(format!("{q} is not a prime power"));
    if *q < BigInt::from(2) {
        return Err(bad());
    }
    let mut rest = q.clone();
    let p = (2u64..)
        .find(|&d| rest.is_multiple_of(&BigInt::from(d)))
        .expect("q >= 2 has a prime factor");
    let pb = BigInt::from(p);
    let mut e = 0;
    while rest.is_multiple_of(&pb) {
        rest /= &pb;
        e += 1;
    }
    if rest.is_one() {
        Ok((p, e))
    } else {
        Err(bad())
    }
}

/// Parsed class literal: `(q, m)` tokens, before choosing a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLiteral {
    pub tokens: Vec<(BigInt, BigInt)>,
}

impl ClassLiteral {
    /// Largest prime mentioned, if any.
    pub fn largest_prime(&self) -> Result<Option<u64>> {
        let mut best = None;
        for (q, _) in &self.tokens {
            let (p, _) = prime_power(q)?;
            best = best.max(Some(p));
        }
        Ok(best)
    }

    /// Smallest window containing every prime mentioned (at least `min_len`).
    pub fn window(&self, min_len: usize) -> Result<PrimeWindow> {
        let needed = match self.largest_prime()? {
            Some(p) => PrimeWindow::covering(p)?.len(),
            None => 0,
        };
        Ok(PrimeWindow::first(needed.max(min_len)))
    }

    pub fn element(&self, window: &PrimeWindow) -> Result<PruferElement> {
        PruferElement::from_tokens(window, &self.tokens)
    }
}

impl fmt::Display for ClassLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|(q, m)| format!("{q}:{m}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ClassLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(ClassLiteral { tokens: Vec::new() });
        }
        let tokens = s
            .split(',')
            .map(|tok| {
                let (q, m) = tok.trim().split_once(':').ok_or_else(|| {
                    Error::InvalidCoordinate(format!("`{tok}` is not of the form q:m"))
                })?;
                let parse = |v: &str| {
                    v.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::InvalidCoordinate(format!("`{v}` is not an integer")))
                };
                let q = parse(q)?;
                prime_power(&q)?;
                Ok((q, parse(m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassLiteral { tokens })
    }
}

/// A class in `A_0 = A / Z`, represented by any element.
#[derive(Clone, Debug)]
pub struct PruferClass {
    rep: PruferElement,
}

impl PruferClass {
    pub fn new(rep: PruferElement) -> Self {
        PruferClass { rep }
    }

    pub fn representative(&self) -> &PruferElement {
        &self.rep
    }

    pub fn window(&self) -> &PrimeWindow {
        &self.rep.window
    }

    /// The least `k >= 0` with `self - other = k·diag`, if the classes agree.
    ///
    /// Each coordinate of the difference pins `k mod p` when its order divides
    /// `p`; any coordinate of larger order means the classes differ.
    pub fn diagonal_multiplier(&self, other: &PruferClass) -> Result<Option<BigInt>> {
        let d = self.rep.sub(&other.rep)?;
        let mut congruences = Vec::with_capacity(d.window.len());
        for (&p, c) in d.window.primes.iter().zip(&d.coords) {
            if c.exponent > 1 {
                return Ok(None);
            }
            congruences.push((c.numerator.clone(), BigInt::from(p)));
        }
        let (k, _) = crt(&congruences);
        debug_assert_eq!(PruferElement::diag_embed(&k, &d.window), d);
        Ok(Some(k))
    }

    pub fn is_zero(&self) -> bool {
        let zero = PruferClass::new(PruferElement::zero(&self.rep.window));
        matches!(self.diagonal_multiplier(&zero), Ok(Some(_)))
    }

    pub fn add(&self, other: &PruferClass) -> Result<PruferClass> {
        Ok(PruferClass::new(self.rep.add(&other.rep)?))
    }

    pub fn neg(&self) -> PruferClass {
        PruferClass::new(self.rep.neg())
    }
}

impl PartialEq for PruferClass {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.diagonal_multiplier(other), Ok(Some(_)))
    }
}

impl Eq for PruferClass {}

impl fmt::Display for PruferClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// `x_i = m/p` for some integer `m`, i.e. the order divides `p`.
pub(crate) fn order_divides_prime(c: &PruferCoord) -> bool {
    c.exponent <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize) -> PrimeWindow {
        PrimeWindow::first(n)
    }

    fn lit(s: &str, n: usize) -> PruferElement {
        s.parse::<ClassLiteral>().unwrap().element(&w(n)).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(PrimeWindow::from_primes(vec![2, 3, 5]).is_ok());
        assert!(PrimeWindow::from_primes(vec![2, 5]).is_err());
        assert!(PrimeWindow::from_primes(vec![3, 5]).is_err());
        assert_eq!(PrimeWindow::covering(7).unwrap().len(), 4);
        assert_eq!(PrimeWindow::covering(9), Err(Error::NotPrime(9)));
        assert_eq!(w(3).primorial(3), BigInt::from(30));
    }

    #[test]
    fn coordinates_normalize() {
        let c = PruferCoord::new(2, BigInt::from(6), 3);
        assert_eq!((c.numerator().clone(), c.exponent()), (BigInt::from(3), 2));
        let c = PruferCoord::new(3, BigInt::from(-1), 1);
        assert_eq!((c.numerator().clone(), c.exponent()), (BigInt::from(2), 1));
        assert!(PruferCoord::new(5, BigInt::from(25), 2).is_zero());
    }

    #[test]
    fn diagonal_embedding() {
        assert!(PruferElement::diag_embed(&BigInt::zero(), &w(3)).is_zero());
        assert_eq!(
            PruferElement::diag_embed(&BigInt::one(), &w(3)).to_string(),
            "(1/2, 1/3, 1/5)"
        );
        assert_eq!(
            PruferElement::diag_embed(&BigInt::from(15), &w(3)).to_string(),
            "(1/2, 0, 0)"
        );
    }

    #[test]
    fn literal_round_trip() {
        let x = lit("2:1,3:2,5:1,7:3", 4);
        assert_eq!(x.to_string(), "(1/2, 2/3, 1/5, 3/7)");
        assert_eq!(x.literal(), "2:1,3:2,5:1,7:3");
        assert_eq!(lit("4:2", 1).literal(), "2:1");
        assert_eq!(lit("0", 2).literal(), "0");
        assert!("6:1".parse::<ClassLiteral>().is_err());
        assert!("2-1".parse::<ClassLiteral>().is_err());
        assert!("11:1"
            .parse::<ClassLiteral>()
            .unwrap()
            .element(&w(3))
            .is_err());
    }

    #[test]
    fn class_equality() {
        let x = PruferClass::new(lit("2:1,3:2,5:1,7:3", 4));
        let y = PruferClass::new(lit("5:1,7:5", 4));
        assert_eq!(x.diagonal_multiplier(&y).unwrap(), Some(BigInt::from(5)));
        assert_eq!(x, y);
        let z = PruferClass::new(lit("4:1", 4));
        assert_ne!(x, z);
        for k in [0, 1, 7, 210, -3] {
            assert!(PruferClass::new(PruferElement::diag_embed(&BigInt::from(k), &w(4))).is_zero());
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&BigInt::from(8)).unwrap(), (2, 3));
        assert_eq!(prime_power(&BigInt::from(7)).unwrap(), (7, 1));
        assert!(prime_power(&BigInt::from(12)).is_err());
        assert!(prime_power(&BigInt::from(1)).is_err());
    }
}
