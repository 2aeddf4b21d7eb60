use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A compatible residue sequence `r_n mod a_n` with `a_1 | a_2 | ... | a_N`:
/// an element of `lim Z/a_n` seen through its first `N` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueTower {
    moduli: Vec<BigInt>,
    residues: Vec<BigInt>,
}

impl ResidueTower {
    pub fn new(moduli: Vec<BigInt>, residues: Vec<BigInt>) -> Result<Self> {
        check_moduli(&moduli)?;
        if residues.len() != moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: moduli.len(),
                found: residues.len(),
            });
        }
        for (n, (r, a)) in residues.iter().zip(&moduli).enumerate() {
            if r.is_negative() || r >= a {
                return Err(Error::IncompatibleResidues { stage: n + 1 });
            }
        }
        for n in 1..moduli.len() {
            if residues[n].mod_floor(&moduli[n - 1]) != residues[n - 1] {
                return Err(Error::IncompatibleResidues { stage: n + 1 });
            }
        }
        Ok(ResidueTower { moduli, residues })
    }

    /// The image of an integer.
    pub fn from_integer(moduli: Vec<BigInt>, seed: &BigInt) -> Result<Self> {
        check_moduli(&moduli)?;
        let residues = moduli.iter().map(|a| seed.mod_floor(a)).collect();
        Ok(ResidueTower { moduli, residues })
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn horizon(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    fn same_moduli(&self, other: &ResidueTower) -> Result<()> {
        if self.moduli != other.moduli {
            return Err(Error::InvalidTower(
                "residue towers over different moduli".into(),
            ));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> ResidueTower {
        let residues = self
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(r, a)| f(r, a).mod_floor(a))
            .collect();
        ResidueTower {
            moduli: self.moduli.clone(),
            residues,
        }
    }

    pub fn add(&self, other: &ResidueTower) -> Result<ResidueTower> {
        self.same_moduli(other)?;
        let mut out = self.clone();
        for ((r, s), a) in out
            .residues
            .iter_mut()
            .zip(&other.residues)
            .zip(&self.moduli)
        {
            *r = (&*r + s).mod_floor(a);
        }
        Ok(out)
    }

    pub fn negate(&self) -> ResidueTower {
        self.map(|r, _| -r)
    }

    pub fn scale(&self, c: &BigInt) -> ResidueTower {
        self.map(|r, _| r * c)
    }

    /// The first `n` coordinates.
    pub fn project(&self, n: usize) -> Result<ResidueTower> {
        if n == 0 || n > self.horizon() {
            return Err(Error::StageOutOfRange {
                stage: n,
                horizon: self.horizon(),
            });
        }
        Ok(ResidueTower {
            moduli: self.moduli[..n].to_vec(),
            residues: self.residues[..n].to_vec(),
        })
    }

    /// The class `k mod a_N` with `x_n - y_n ≡ k (mod a_n)` for every `n`.
    ///
    /// At a finite horizon any two residue towers differ by an integer, so
    /// `x ≡ y` in `lim Z/a_n / Z` can only be read off up to this ambiguity:
    /// the integer is pinned modulo `a_N` and nothing more.
    pub fn is_diagonal_at_horizon(&self, other: &ResidueTower) -> Result<BigInt> {
        self.same_moduli(other)?;
        let last = self.horizon() - 1;
        let k = (&self.residues[last] - &other.residues[last]).mod_floor(&self.moduli[last]);
        debug_assert!(self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(&self.moduli)
            .all(|((x, y), a)| (x - y - &k).is_multiple_of(a)));
        Ok(k)
    }
}

fn check_moduli(moduli: &[BigInt]) -> Result<()> {
    if moduli.is_empty() {
        return Err(Error::InvalidTower("no moduli".into()));
    }
    if let Some(a) = moduli.iter().find(|a| !a.is_positive()) {
        return Err(Error::BadModuli(a.clone(), a.clone()));
    }
    for w in moduli.windows(2) {
        if !w[1].is_multiple_of(&w[0]) {
            return Err(Error::BadModuli(w[0].clone(), w[1].clone()));
        }
    }
    Ok(())
}

impl fmt::Display for ResidueTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(r, a)| format!("{r} mod {a}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn make_from_seed() {
        let x = ResidueTower::from_integer(big(&[2, 6, 30]), &BigInt::from(7)).unwrap();
        assert_eq!(x.residues(), big(&[1, 1, 7]).as_slice());
    }

    #[test]
    fn inverse_and_diagonal_difference() {
        let m = big(&[2, 6, 30]);
        let x = ResidueTower::from_integer(m.clone(), &BigInt::from(7)).unwrap();
        assert!(x.add(&x.negate()).unwrap().is_zero());
        let y = ResidueTower::from_integer(m, &BigInt::from(2)).unwrap();
        assert_eq!(x.is_diagonal_at_horizon(&y).unwrap(), BigInt::from(5));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ResidueTower::from_integer(big(&[2, 5]), &BigInt::from(1)),
            Err(Error::BadModuli(..))
        ));
        assert_eq!(
            ResidueTower::new(big(&[2, 6]), big(&[1, 2])),
            Err(Error::IncompatibleResidues { stage: 2 })
        );
        assert!(ResidueTower::new(big(&[2, 6]), big(&[1, 6])).is_err());
        assert!(ResidueTower::new(big(&[2, 6]), big(&[1, 3])).is_ok());
    }

    #[test]
    fn projection() {
        let x = ResidueTower::from_integer(big(&[2, 6, 30]), &BigInt::from(29)).unwrap();
        assert_eq!(x.project(2).unwrap().residues(), big(&[1, 5]).as_slice());
        assert!(x.project(0).is_err());
        assert!(x.project(4).is_err());
    }
}
