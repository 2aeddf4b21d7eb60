//! Small-prime utilities: the first `n` primes, primorials, CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The first `n` primes, in increasing order.
pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(n).collect()
}

/// Primes `p <= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// Smallest prime `>= m`.
pub fn next_prime_at_least(m: u64) -> u64 {
    (m.max(2)..)
        .find(|&p| is_prime(p))
        .expect("primes are unbounded")
}

/// Product of the first `n` primes; `k(0) = 1`.
pub fn primorial(n: usize) -> BigInt {
    first_primes(n)
        .into_iter()
        .fold(BigInt::one(), |acc, p| acc * p)
}

/// The least non-negative `x` with `x ≡ r_i (mod m_i)` for pairwise coprime
/// positive moduli, together with the product of the moduli.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        // x + modulus * t ≡ r (mod m)  =>  t ≡ (r - x) * modulus^{-1} (mod m)
        let e = modulus.extended_gcd(m);
        debug_assert!(e.gcd.is_one(), "CRT moduli must be coprime");
        let t = ((r - &x) * e.x).mod_floor(m);
        x += &modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    (x, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(next_prime_at_least(4), 5);
        assert_eq!(next_prime_at_least(3), 3);
        assert_eq!(next_prime_at_least(1), 2);
        assert_eq!(primorial(4), BigInt::from(210));
        assert_eq!(primorial(0), BigInt::one());
    }

    #[test]
    fn crt_matches_search() {
        let cong = [
            (BigInt::from(1), BigInt::from(2)),
            (BigInt::from(2), BigInt::from(3)),
            (BigInt::from(3), BigInt::from(7)),
        ];
        let (x, m) = crt(&cong);
        assert_eq!(m, BigInt::from(42));
        let brute = (0..42)
            .find(|v| v % 2 == 1 && v % 3 == 2 && v % 7 == 3)
            .unwrap();
        assert_eq!(x, BigInt::from(brute));
    }
}
