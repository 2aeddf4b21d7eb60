//! Finite-horizon inverse towers `G_1 <- G_2 <- ... <- G_N`.
//!
//! Stages are indexed from 1 as in the usual notation; `bond(n)` is the map
//! `G_{n+1} -> G_n`.

mod filtration;
mod limit;
mod residue;

pub use filtration::{
    gray_kernel_levels, image_filtration, is_mittag_leffler, lim1_classification,
    stable_image_tower, FiltrationReport, GrayLevelReport, GrayTag, Lim1Certificate,
    Lim1Classification, MlReport, StableImageTower, StageStatus,
};
pub use limit::{
    lim_at_horizon, six_term_check, ArrowCheck, ArrowStatus, LimitApprox, SixTermReport,
};
pub use residue::ResidueTower;

use num_bigint::BigInt;

use crate::abelian::{FgAbGroup, Homomorphism, Matrix};
use crate::error::{Error, Result};
use crate::primes::first_primes;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    stages: Vec<FgAbGroup>,
    bonds: Vec<Homomorphism>,
}

impl Tower {
    /// `bonds[i]` maps `stages[i + 1]` to `stages[i]`.
    pub fn new(stages: Vec<FgAbGroup>, bonds: Vec<Homomorphism>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidTower(
                "a tower needs at least one stage".into(),
            ));
        }
        if bonds.len() + 1 != stages.len() {
            return Err(Error::InvalidTower(format!(
                "{} stages need {} bonds, got {}",
                stages.len(),
                stages.len() - 1,
                bonds.len()
            )));
        }
        for (i, f) in bonds.iter().enumerate() {
            if f.source() != &stages[i + 1] || f.target() != &stages[i] {
                return Err(Error::InvalidTower(format!(
                    "bond {} must map stage {} to stage {}",
                    i + 1,
                    i + 2,
                    i + 1
                )));
            }
        }
        Ok(Tower { stages, bonds })
    }

    /// `G <- G <- ...` with identity bonds.
    pub fn constant(group: &FgAbGroup, horizon: usize) -> Self {
        Self::repeated(&Homomorphism::identity(group), horizon)
    }

    /// Constant stages with the same endomorphism as every bond.
    pub fn repeated(endo: &Homomorphism, horizon: usize) -> Self {
        assert_eq!(endo.source(), endo.target(), "bond must be an endomorphism");
        assert!(horizon >= 1, "horizon must be positive");
        Tower {
            stages: vec![endo.source().clone(); horizon],
            bonds: vec![endo.clone(); horizon - 1],
        }
    }

    /// `Z <-×k- Z <-×k- ...`
    pub fn scaling(k: i64, horizon: usize) -> Self {
        Self::repeated(&Homomorphism::scalar(&FgAbGroup::free(1), k), horizon)
    }

    /// Stage `n` is `k(n-1)Z` (the product of the first `n - 1` primes),
    /// presented as `Z` on the generator `k(n-1)`; bonds are the inclusions,
    /// i.e. multiplication by the `n`-th prime in those coordinates.
    pub fn primorial(horizon: usize) -> Self {
        assert!(horizon >= 1, "horizon must be positive");
        let z = FgAbGroup::free(1);
        let bonds = first_primes(horizon - 1)
            .into_iter()
            .map(|p| {
                Homomorphism::new(
                    z.clone(),
                    z.clone(),
                    Matrix::from_rows(1, &[vec![BigInt::from(p)]]),
                )
                .expect("maps between free groups are well defined")
            })
            .collect();
        Tower {
            stages: vec![z; horizon],
            bonds,
        }
    }

    pub fn horizon(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[FgAbGroup] {
        &self.stages
    }

    pub fn bonds(&self) -> &[Homomorphism] {
        &self.bonds
    }

    pub fn stage(&self, n: usize) -> Result<&FgAbGroup> {
        self.check_stage(n)?;
        Ok(&self.stages[n - 1])
    }

    /// `f_n : G_{n+1} -> G_n`, for `1 <= n < horizon`.
    pub fn bond(&self, n: usize) -> Result<&Homomorphism> {
        if n == 0 || n >= self.horizon() {
            return Err(Error::StageOutOfRange {
                stage: n,
                horizon: self.horizon() - 1,
            });
        }
        Ok(&self.bonds[n - 1])
    }

    /// The composite `G_k -> G_n` for `k >= n`.
    pub fn composite(&self, k: usize, n: usize) -> Result<Homomorphism> {
        self.check_stage(k)?;
        self.check_stage(n)?;
        if k < n {
            return Err(Error::InvalidTower(format!(
                "no map from stage {k} up to stage {n}"
            )));
        }
        let mut map = Homomorphism::identity(&self.stages[n - 1]);
        for j in n..k {
            map = map.after(&self.bonds[j - 1])?;
        }
        Ok(map)
    }

    /// All composites `G_k -> G_n` for `k = n..=N`, built incrementally.
    pub(crate) fn composites_from(&self, n: usize) -> Vec<Homomorphism> {
        let mut out = Vec::with_capacity(self.horizon() - n + 1);
        let mut map = Homomorphism::identity(&self.stages[n - 1]);
        out.push(map.clone());
        for j in n..self.horizon() {
            map = map.after(&self.bonds[j - 1]).expect("bonds compose");
            out.push(map.clone());
        }
        out
    }

    /// The first `horizon` stages.
    pub fn truncate(&self, horizon: usize) -> Result<Tower> {
        if horizon == 0 || horizon > self.horizon() {
            return Err(Error::StageOutOfRange {
                stage: horizon,
                horizon: self.horizon(),
            });
        }
        Ok(Tower {
            stages: self.stages[..horizon].to_vec(),
            bonds: self.bonds[..horizon - 1].to_vec(),
        })
    }

    pub fn is_finite(&self) -> bool {
        self.stages.iter().all(FgAbGroup::is_finite)
    }

    pub(crate) fn check_stage(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.horizon() {
            Err(Error::StageOutOfRange {
                stage: n,
                horizon: self.horizon(),
            })
        } else {
            Ok(())
        }
    }
}

/// Levelwise maps `source_n -> target_n` commuting with the bonds.
#[derive(Clone, Debug)]
pub struct TowerMap {
    source: Tower,
    target: Tower,
    maps: Vec<Homomorphism>,
}

impl TowerMap {
    pub fn new(source: Tower, target: Tower, maps: Vec<Homomorphism>) -> Result<Self> {
        if source.horizon() != target.horizon() || maps.len() != source.horizon() {
            return Err(Error::InvalidTower("tower map horizons disagree".into()));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.source() != &source.stages[n] || m.target() != &target.stages[n] {
                return Err(Error::IncompatibleMaps(format!(
                    "level {} has wrong endpoints",
                    n + 1
                )));
            }
        }
        for n in 0..source.horizon() - 1 {
            let down_then_across = maps[n].after(&source.bonds[n])?;
            let across_then_down = target.bonds[n].after(&maps[n + 1])?;
            if down_then_across != across_then_down {
                return Err(Error::NotCommuting { stage: n + 1 });
            }
        }
        Ok(TowerMap {
            source,
            target,
            maps,
        })
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }
}

/// A levelwise short exact sequence of towers `0 -> K -> G -> H -> 0`.
#[derive(Clone, Debug)]
pub struct TowerSes {
    inclusion: TowerMap,
    projection: TowerMap,
}

impl TowerSes {
    pub fn new(inclusion: TowerMap, projection: TowerMap) -> Result<Self> {
        if inclusion.target != projection.source {
            return Err(Error::InvalidTower("middle towers differ".into()));
        }
        for (n, (i, q)) in inclusion.maps.iter().zip(&projection.maps).enumerate() {
            let stage = n + 1;
            if !i.is_injective() {
                return Err(Error::NotExact {
                    stage,
                    reason: "left map is not injective".into(),
                });
            }
            if !q.is_surjective() {
                return Err(Error::NotExact {
                    stage,
                    reason: "right map is not surjective".into(),
                });
            }
            if !i.image().same_as(&q.kernel()) {
                return Err(Error::NotExact {
                    stage,
                    reason: "image differs from kernel".into(),
                });
            }
        }
        Ok(TowerSes {
            inclusion,
            projection,
        })
    }

    pub fn kernel(&self) -> &Tower {
        &self.inclusion.source
    }

    pub fn middle(&self) -> &Tower {
        &self.inclusion.target
    }

    pub fn quotient(&self) -> &Tower {
        &self.projection.target
    }

    pub fn inclusion(&self) -> &TowerMap {
        &self.inclusion
    }

    pub fn projection(&self) -> &TowerMap {
        &self.projection
    }

    pub fn horizon(&self) -> usize {
        self.middle().horizon()
    }

    /// `0 -> {p^n Z/p^{2n}} -> {Z/p^{2n}} -> {Z/p^n} -> 0` with reduction bonds.
    pub fn prime_power(p: u64, horizon: usize) -> Result<Self> {
        let p = BigInt::from(p);
        let pow = |e: usize| p.pow(e as u32);
        let middle_groups: Vec<FgAbGroup> = (1..=horizon)
            .map(|n| FgAbGroup::cyclic(pow(2 * n)))
            .collect();
        let quotient_groups: Vec<FgAbGroup> =
            (1..=horizon).map(|n| FgAbGroup::cyclic(pow(n))).collect();
        // p^n Z/p^{2n} ≅ Z/p^n on the generator p^n.
        let kernel_groups = quotient_groups.clone();
        let one = || Matrix::from_rows(1, &[vec![1]]);

        let bonds = |gs: &[FgAbGroup], m: &dyn Fn(usize) -> Matrix| -> Result<Vec<Homomorphism>> {
            (0..gs.len().saturating_sub(1))
                .map(|i| Homomorphism::new(gs[i + 1].clone(), gs[i].clone(), m(i + 1)))
                .collect()
        };
        let middle = Tower::new(middle_groups.clone(), bonds(&middle_groups, &|_| one())?)?;
        let quotient = Tower::new(
            quotient_groups.clone(),
            bonds(&quotient_groups, &|_| one())?,
        )?;
        // p^{n+1} in Z/p^{2n} is p times the generator p^n.
        let kernel = Tower::new(
            kernel_groups.clone(),
            bonds(&kernel_groups, &|_| {
                Matrix::from_rows(1, &[vec![p.clone()]])
            })?,
        )?;

        let incl = (0..horizon)
            .map(|i| {
                Homomorphism::new(
                    kernel_groups[i].clone(),
                    middle_groups[i].clone(),
                    Matrix::from_rows(1, &[vec![pow(i + 1)]]),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let proj = (0..horizon)
            .map(|i| Homomorphism::new(middle_groups[i].clone(), quotient_groups[i].clone(), one()))
            .collect::<Result<Vec<_>>>()?;
        TowerSes::new(
            TowerMap::new(kernel, middle.clone(), incl)?,
            TowerMap::new(middle, quotient, proj)?,
        )
    }

    /// The degenerate sequence `0 -> 0 -> T -> T -> 0`.
    pub fn trivial_over(tower: &Tower) -> Self {
        let zero = Tower::constant(&FgAbGroup::trivial(), tower.horizon());
        let incl = tower
            .stages
            .iter()
            .map(|g| Homomorphism::zero(&FgAbGroup::trivial(), g))
            .collect();
        let ident = tower.stages.iter().map(Homomorphism::identity).collect();
        TowerSes::new(
            TowerMap::new(zero, tower.clone(), incl).expect("zero maps commute"),
            TowerMap::new(tower.clone(), tower.clone(), ident).expect("identities commute"),
        )
        .expect("0 -> 0 -> T -> T -> 0 is exact")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_validation() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        assert!(Tower::new(vec![], vec![]).is_err());
        assert!(Tower::new(vec![z.clone(), z2.clone()], vec![]).is_err());
        let bad = Homomorphism::zero(&z, &z2);
        assert!(Tower::new(vec![z.clone(), z2.clone()], vec![bad]).is_err());
        let ok = Homomorphism::zero(&z2, &z);
        assert!(Tower::new(vec![z, z2], vec![ok]).is_ok());
    }

    #[test]
    fn composites() {
        let t = Tower::primorial(4);
        let c = t.composite(4, 1).unwrap();
        assert_eq!(c.matrix(), &Matrix::from_rows(1, &[vec![30]]));
        assert!(t.composite(1, 2).is_err());
        assert!(t.composite(5, 1).is_err());
        assert_eq!(t.composites_from(2).len(), 3);
    }

    #[test]
    fn non_commuting_maps_are_rejected() {
        let a = Tower::scaling(2, 3);
        let b = Tower::scaling(3, 3);
        let ids = a.stages().iter().map(Homomorphism::identity).collect();
        assert_eq!(
            TowerMap::new(a, b, ids).unwrap_err(),
            Error::NotCommuting { stage: 1 }
        );
    }

    #[test]
    fn non_exact_levels_are_rejected() {
        let t = Tower::constant(&FgAbGroup::cyclic(4), 2);
        let ids: Vec<_> = t.stages().iter().map(Homomorphism::identity).collect();
        let twice: Vec<_> = t
            .stages()
            .iter()
            .map(|g| Homomorphism::scalar(g, 2))
            .collect();
        let i = TowerMap::new(t.clone(), t.clone(), twice.clone()).unwrap();
        let q = TowerMap::new(t.clone(), t.clone(), ids).unwrap();
        assert!(matches!(TowerSes::new(i, q), Err(Error::NotExact { .. })));
        // ×2 then ×2 on Z/4: composite zero, but ×2 is neither injective nor surjective.
        let i = TowerMap::new(t.clone(), t.clone(), twice.clone()).unwrap();
        let q = TowerMap::new(t.clone(), t, twice).unwrap();
        assert!(TowerSes::new(i, q).is_err());
    }

    #[test]
    fn prime_power_sequence_is_exact() {
        let s = TowerSes::prime_power(2, 5).unwrap();
        assert_eq!(s.horizon(), 5);
        assert_eq!(s.middle().stage(5).unwrap(), &FgAbGroup::cyclic(1024));
    }
}
