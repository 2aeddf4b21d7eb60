//! The alternating binomial sums
//! `δ_n(k) = Σ_{i=1}^n (-1)^{n-i} C(n,i) i^k`, which count surjections from a
//! `k`-set onto an `n`-set and so equal `n!·S(k,n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigInt::one());
        row = next;
    }
    row
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn delta_with_row(row: &[BigInt], n: usize, k: usize) -> BigInt {
    let mut sum = BigInt::zero();
    for (i, c) in row.iter().enumerate().take(n + 1).skip(1) {
        let term = c * BigInt::from(i).pow(k as u32);
        if (n - i).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

pub fn delta(n: usize, k: usize) -> BigInt {
    delta_with_row(&binomial_row(n), n, k)
}

/// Stirling numbers `S(j, m)` for `0 <= j <= max_k`, `0 <= m <= max_n`.
fn stirling_table(max_n: usize, max_k: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max_n + 1]; max_k + 1];
    s[0][0] = BigInt::one();
    for j in 1..=max_k {
        for m in 1..=max_n {
            s[j][m] = BigInt::from(m) * &s[j - 1][m] + &s[j - 1][m - 1];
        }
    }
    s
}

/// `n!·S(k, n)` with `S` from the recurrence `S(k,n) = n·S(k-1,n) + S(k-1,n-1)`.
pub fn stirling_oracle(n: usize, k: usize) -> BigInt {
    factorial(n) * &stirling_table(n, k)[k][n]
}

/// A formula for `δ_n(k)` given the binomial row of `n`.
pub type DeltaFormula = fn(&[BigInt], usize, usize) -> BigInt;

/// The standard formula.
pub const DIRECT_SUM: DeltaFormula = delta_with_row;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTable {
    max_n: usize,
    max_k: usize,
    values: Vec<Vec<BigInt>>,
}

impl DeltaTable {
    pub fn build(max_n: usize, max_k: usize) -> Result<Self> {
        Self::build_with(max_n, max_k, DIRECT_SUM, false)
    }

    pub fn build_parallel(max_n: usize, max_k: usize) -> Result<Self> {
        Self::build_with(max_n, max_k, DIRECT_SUM, true)
    }

    /// Builds the table with `formula` and refuses to return it unless every
    /// entry matches the Stirling oracle. Rows are computed in parallel when
    /// asked; the result does not depend on it.
    pub fn build_with(
        max_n: usize,
        max_k: usize,
        formula: DeltaFormula,
        parallel: bool,
    ) -> Result<Self> {
        let row = |n: usize| {
            let binom = binomial_row(n);
            (1..=max_k)
                .map(|k| formula(&binom, n, k))
                .collect::<Vec<_>>()
        };
        let values: Vec<Vec<BigInt>> = if parallel {
            (1..=max_n).into_par_iter().map(row).collect()
        } else {
            (1..=max_n).map(row).collect()
        };

        let stirling = stirling_table(max_n, max_k);
        let mut fact = BigInt::one();
        for n in 1..=max_n {
            fact *= n;
            for k in 1..=max_k {
                let oracle = &fact * &stirling[k][n];
                let direct = &values[n - 1][k - 1];
                if *direct != oracle {
                    return Err(Error::OracleMismatch {
                        n,
                        k,
                        direct: direct.clone(),
                        oracle,
                    });
                }
            }
        }
        Ok(DeltaTable {
            max_n,
            max_k,
            values,
        })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// `δ_n(k)` for `1 <= n <= max_n`, `1 <= k <= max_k`.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.values.get(n.checked_sub(1)?)?.get(k.checked_sub(1)?)
    }

    /// Rows indexed from `n = 1`, each indexed from `k = 1`.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn properties(&self) -> DeltaProperties {
        let mut props = DeltaProperties {
            vanishing_below_diagonal: true,
            diagonal_is_factorial: true,
            factorial_divides: true,
        };
        let mut fact = BigInt::one();
        for n in 1..=self.max_n {
            fact *= n;
            for k in 1..=self.max_k {
                let v = &self.values[n - 1][k - 1];
                if k < n && !v.is_zero() {
                    props.vanishing_below_diagonal = false;
                }
                if k == n && *v != fact {
                    props.diagonal_is_factorial = false;
                }
                if !v.is_multiple_of(&fact) {
                    props.factorial_divides = false;
                }
            }
        }
        props
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaProperties {
    pub vanishing_below_diagonal: bool,
    pub diagonal_is_factorial: bool,
    pub factorial_divides: bool,
}

impl DeltaProperties {
    pub fn all(&self) -> bool {
        self.vanishing_below_diagonal && self.diagonal_is_factorial && self.factorial_divides
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisibilityRow {
    pub n: usize,
    pub delta: BigInt,
    /// `p | δ_n(p)`.
    pub divisible: bool,
    /// Each term `(-1)^{n-i} C(n,i) i^p` agrees mod `p` with the matching
    /// term of `δ_n(1)`, and `δ_n(1) = 0`.
    pub congruence_chain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisibilityReport {
    pub p: u64,
    pub rows: Vec<PrimeDivisibilityRow>,
}

impl PrimeDivisibilityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.divisible && r.congruence_chain)
    }
}

/// Checks `p | δ_n(p)` for `2 <= n <= n_max`, through the value and through
/// the termwise congruence `i^p ≡ i (mod p)`. `n = 1` is excluded.
pub fn check_prime_divisibility(p: u64, n_max: usize) -> Result<PrimeDivisibilityReport> {
    check_prime_divisibility_with(p, n_max, DIRECT_SUM)
}

pub fn check_prime_divisibility_with(
    p: u64,
    n_max: usize,
    formula: DeltaFormula,
) -> Result<PrimeDivisibilityReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let rows = (2..=n_max)
        .map(|n| {
            let binom = binomial_row(n);
            let value = formula(&binom, n, p as usize);
            let chain = (1..=n).all(|i| {
                let i = BigInt::from(i);
                (i.pow(p as u32) - &i).is_multiple_of(&pb)
            }) && formula(&binom, n, 1).is_zero();
            PrimeDivisibilityRow {
                n,
                divisible: value.is_multiple_of(&pb),
                delta: value,
                congruence_chain: chain,
            }
        })
        .collect();
    Ok(PrimeDivisibilityReport { p, rows })
}

/// `δ_n(p) mod p`: the coefficient by which `Σ f_n` acts on a class of order `p`.
pub fn torsion_action(n: usize, p: u64) -> Result<u64> {
    torsion_action_with(n, p, DIRECT_SUM)
}

pub fn torsion_action_with(n: usize, p: u64, formula: DeltaFormula) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = formula(&binomial_row(n), n, p as usize).mod_floor(&BigInt::from(p));
    Ok(u64::try_from(r).expect("residue below p"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(delta(2, 2), BigInt::from(2));
        assert_eq!(delta(3, 2), BigInt::zero());
        assert_eq!(delta(3, 5), BigInt::from(150));
        for k in 1..10 {
            assert_eq!(delta(1, k), BigInt::one());
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(stirling_oracle(3, 5), BigInt::from(150));
        assert_eq!(stirling_oracle(6, 6), factorial(6));
        assert!(stirling_oracle(5, 3).is_zero());
    }

    #[test]
    fn table_agrees_and_has_properties() {
        let t = DeltaTable::build(12, 14).unwrap();
        assert_eq!(t.get(3, 5), Some(&BigInt::from(150)));
        assert_eq!(t.get(0, 1), None);
        assert!(t.properties().all());
        assert_eq!(DeltaTable::build_parallel(12, 14).unwrap(), t);
    }

    #[test]
    fn mutated_formula_is_refused() {
        fn off_by_one(row: &[BigInt], n: usize, k: usize) -> BigInt {
            let v = DIRECT_SUM(row, n, k);
            if n == 4 && k == 6 {
                v + 1
            } else {
                v
            }
        }
        assert!(matches!(
            DeltaTable::build_with(5, 8, off_by_one, false),
            Err(Error::OracleMismatch { n: 4, k: 6, .. })
        ));
    }

    #[test]
    fn prime_divisibility() {
        let r = check_prime_divisibility(3, 2).unwrap();
        assert_eq!(r.rows[0].delta, BigInt::from(6));
        assert!(r.passed());
        let r = check_prime_divisibility(5, 3).unwrap();
        assert_eq!(r.rows[1].delta, BigInt::from(150));
        assert!(r.passed());
        assert!(check_prime_divisibility(7, 1).unwrap().rows.is_empty());
        assert_eq!(check_prime_divisibility(9, 3), Err(Error::NotPrime(9)));
    }

    #[test]
    fn torsion_action_examples() {
        assert_eq!(torsion_action(2, 3).unwrap(), 0);
        assert_eq!(torsion_action(4, 7).unwrap(), 0);
        assert_eq!(torsion_action(1, 11).unwrap(), 1);
    }
}
