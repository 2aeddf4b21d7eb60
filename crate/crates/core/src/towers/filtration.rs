//! Image filtrations `G_n^(k) = Im(G_k -> G_n)` and everything decided from them.
//!
//! All verdicts are relative to the horizon `N`. A stage `n < N` is *stable*
//! when its chain is seen to be constant over at least one step before the
//! horizon: `G_n^(k) = G_n^(N)` for some `k < N`. The top stage `n = N` has a
//! one-term chain and carries no information either way.

use rayon::prelude::*;

use super::Tower;
use crate::abelian::{FgAbGroup, Homomorphism, Subgroup};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageStatus {
    /// `G_n^(k)` is constant for `k` in `from..=N`, with `from < N`.
    Stable { from: usize },
    /// `G_n^(N-1)` strictly contains `G_n^(N)`.
    Unstable { witness: (usize, usize) },
    /// The horizon stage itself: a single-term chain.
    Horizon,
}

impl StageStatus {
    pub fn is_stable(&self) -> bool {
        matches!(self, StageStatus::Stable { .. })
    }
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub stage: usize,
    /// `chain[i]` is `G_n^(n+i)` as a subgroup of `G_n`.
    pub chain: Vec<Subgroup>,
    /// Whether every `G_n^(k) ⊇ G_n^(k+1)` was confirmed.
    pub descending: bool,
    pub status: StageStatus,
}

impl FiltrationReport {
    pub fn stabilized_at(&self) -> Option<usize> {
        match self.status {
            StageStatus::Stable { from } => Some(from),
            _ => None,
        }
    }

    /// Indices `k` with `G_n^(k) ⊋ G_n^(k+1)`.
    pub fn strict_steps(&self) -> Vec<usize> {
        self.chain
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[1].contains_subgroup(&w[0]))
            .map(|(i, _)| self.stage + i)
            .collect()
    }

    /// True when every step of the chain is a strict inclusion.
    pub fn strictly_decreasing(&self) -> bool {
        self.strict_steps().len() + 1 == self.chain.len()
    }

    pub fn subgroup(&self, k: usize) -> Option<&Subgroup> {
        k.checked_sub(self.stage).and_then(|i| self.chain.get(i))
    }
}

pub fn image_filtration(tower: &Tower, n: usize) -> Result<FiltrationReport> {
    tower.check_stage(n)?;
    let chain: Vec<Subgroup> = tower
        .composites_from(n)
        .iter()
        .map(Homomorphism::image)
        .collect();
    Ok(filtration_from_chain(n, tower.horizon(), chain))
}

fn filtration_from_chain(n: usize, horizon: usize, chain: Vec<Subgroup>) -> FiltrationReport {
    let descending = chain.windows(2).all(|w| w[0].contains_subgroup(&w[1]));
    let status = if n == horizon {
        StageStatus::Horizon
    } else {
        let last = chain.last().expect("chain is nonempty");
        // Descending, so equality with the last term propagates to the end.
        let first_equal = chain
            .iter()
            .position(|s| s.same_as(last))
            .expect("last equals itself");
        let from = n + first_equal;
        if from < horizon {
            StageStatus::Stable { from }
        } else {
            StageStatus::Unstable {
                witness: (horizon - 1, horizon),
            }
        }
    };
    FiltrationReport {
        stage: n,
        chain,
        descending,
        status,
    }
}

#[derive(Clone, Debug)]
pub struct MlReport {
    pub horizon: usize,
    pub stages: Vec<FiltrationReport>,
}

impl MlReport {
    /// Every stage below the horizon is stable.
    pub fn is_ml(&self) -> bool {
        self.stages
            .iter()
            .all(|r| r.status.is_stable() || r.status == StageStatus::Horizon)
    }

    pub fn unstable_stages(&self) -> Vec<(usize, (usize, usize))> {
        self.stages
            .iter()
            .filter_map(|r| match r.status {
                StageStatus::Unstable { witness } => Some((r.stage, witness)),
                _ => None,
            })
            .collect()
    }
}

pub fn is_mittag_leffler(tower: &Tower) -> MlReport {
    let stages = (1..=tower.horizon())
        .into_par_iter()
        .map(|n| image_filtration(tower, n).expect("stage in range"))
        .collect();
    MlReport {
        horizon: tower.horizon(),
        stages,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lim1Certificate {
    /// `(stage, stabilized_at)` for every stage below the horizon.
    Stabilized { indices: Vec<(usize, usize)> },
    /// Every stage is finite, so every descending chain of images stabilizes.
    FiniteStages,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lim1Classification {
    ZeroCertified(Lim1Certificate),
    /// `(stage, strictly decreasing pair)` for each stage not seen to stabilize.
    UndeterminedAtHorizon {
        unstable: Vec<(usize, (usize, usize))>,
    },
}

impl Lim1Classification {
    pub fn is_zero_certified(&self) -> bool {
        matches!(self, Lim1Classification::ZeroCertified(_))
    }
}

pub fn lim1_classification(tower: &Tower) -> Lim1Classification {
    classify(&is_mittag_leffler(tower), tower.is_finite())
}

fn classify(ml: &MlReport, finite: bool) -> Lim1Classification {
    if ml.is_ml() {
        let indices = ml
            .stages
            .iter()
            .filter_map(|r| r.stabilized_at().map(|k| (r.stage, k)))
            .collect();
        Lim1Classification::ZeroCertified(Lim1Certificate::Stabilized { indices })
    } else if finite {
        Lim1Classification::ZeroCertified(Lim1Certificate::FiniteStages)
    } else {
        Lim1Classification::UndeterminedAtHorizon {
            unstable: ml.unstable_stages(),
        }
    }
}

/// The tower of horizon images `G_n^(N)` with the restricted bonds.
#[derive(Clone, Debug)]
pub struct StableImageTower {
    pub tower: Tower,
    /// `G_n^(N) -> G_n`.
    pub inclusions: Vec<Homomorphism>,
    /// Every stage below the horizon stabilized before it.
    pub stabilized: bool,
    pub bonds_surjective: bool,
}

pub fn stable_image_tower(tower: &Tower) -> StableImageTower {
    let ml = is_mittag_leffler(tower);
    let images: Vec<Subgroup> = ml
        .stages
        .iter()
        .map(|r| r.chain.last().expect("chain is nonempty").clone())
        .collect();
    let bonds: Vec<Homomorphism> = (0..tower.horizon() - 1)
        .map(|i| {
            tower.bonds()[i]
                .restrict(&images[i + 1])
                .and_then(|f| f.corestrict(&images[i]))
                .expect("bonds carry horizon images into horizon images")
        })
        .collect();
    let bonds_surjective = bonds.iter().all(Homomorphism::is_surjective);
    let stages: Vec<FgAbGroup> = images.iter().map(|s| s.group().clone()).collect();
    StableImageTower {
        tower: Tower::new(stages, bonds).expect("restricted bonds fit"),
        inclusions: images.iter().map(|s| s.inclusion().clone()).collect(),
        stabilized: ml.is_ml(),
        bonds_surjective,
    }
}

/// What the derived tower says about the Gray filtration level `L^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrayTag {
    /// `lim¹` of the derived tower vanishes, so `p_k` is trivial and `L^k`
    /// is all of `lim¹ G`.
    WholeLim1,
    /// Nothing can be said at this horizon.
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct GrayLevelReport {
    pub k: usize,
    /// `n -> G_k^(n)` as subgroups of `G_k`.
    pub derived: Tower,
    /// Number of leading stages `n < k` filled with `G_k` itself.
    pub prefix_stages: usize,
    pub ml: MlReport,
    pub lim1: Lim1Classification,
    pub tag: GrayTag,
}

/// Builds `n -> G_k^(n)` and classifies it.
///
/// For `n < k` the stage is `G_k` (the `n < k` branch of the filtration
/// convention, reported through `prefix_stages`); for `n >= k` it is the image
/// of `G_n` in `G_k`. Bonds are the inclusions.
pub fn gray_kernel_levels(tower: &Tower, k: usize) -> Result<GrayLevelReport> {
    tower.check_stage(k)?;
    let horizon = tower.horizon();
    let gk = tower.stage(k)?;
    let whole = Subgroup::whole(gk);
    let images: Vec<Subgroup> = tower
        .composites_from(k)
        .iter()
        .map(Homomorphism::image)
        .collect();
    let subs: Vec<Subgroup> = (1..=horizon)
        .map(|n| {
            if n < k {
                whole.clone()
            } else {
                images[n - k].clone()
            }
        })
        .collect();
    let bonds = subs
        .windows(2)
        .map(|w| w[1].inclusion().corestrict(&w[0]))
        .collect::<Result<Vec<_>>>()?;
    let derived = Tower::new(subs.iter().map(|s| s.group().clone()).collect(), bonds)?;
    let ml = is_mittag_leffler(&derived);
    let lim1 = classify(&ml, derived.is_finite());
    let tag = if lim1.is_zero_certified() {
        GrayTag::WholeLim1
    } else {
        GrayTag::Undetermined
    };
    Ok(GrayLevelReport {
        k,
        derived,
        prefix_stages: k - 1,
        ml,
        lim1,
        tag,
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::abelian::Matrix;
    use crate::error::Error;
    use crate::primes::primorial;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn multiples(n: impl Into<BigInt>) -> Subgroup {
        Subgroup::generated_by(&z(), &[z().element([n.into()]).unwrap()])
    }

    #[test]
    fn doubling_chain_does_not_stabilize() {
        let r = image_filtration(&Tower::scaling(2, 5), 1).unwrap();
        for (i, s) in r.chain.iter().enumerate() {
            assert!(s.same_as(&multiples(1i64 << i)));
        }
        assert!(r.descending);
        assert!(r.strictly_decreasing());
        assert_eq!(r.status, StageStatus::Unstable { witness: (4, 5) });
    }

    #[test]
    fn identity_bonds_stabilize_immediately() {
        let t = Tower::constant(&FgAbGroup::cyclic(6), 4);
        for n in 1..4 {
            let r = image_filtration(&t, n).unwrap();
            assert_eq!(r.stabilized_at(), Some(n));
        }
        assert_eq!(
            image_filtration(&t, 4).unwrap().status,
            StageStatus::Horizon
        );
        assert!(matches!(
            image_filtration(&t, 5),
            Err(Error::StageOutOfRange { .. })
        ));
        assert!(image_filtration(&t, 0).is_err());
    }

    #[test]
    fn primorial_chain() {
        let r = image_filtration(&Tower::primorial(4), 1).unwrap();
        let expected = [1, 2, 6, 30];
        for (s, e) in r.chain.iter().zip(expected) {
            assert!(s.same_as(&multiples(e)));
        }
        assert!(r.strictly_decreasing());
    }

    #[test]
    fn surjective_finite_tower_is_ml() {
        let g = |n: u32| FgAbGroup::cyclic(BigInt::from(2).pow(n));
        let stages: Vec<_> = (1..=4).map(g).collect();
        let bonds = (1..4)
            .map(|n| Homomorphism::new(g(n + 1), g(n), Matrix::from_rows(1, &[vec![1]])).unwrap())
            .collect();
        let t = Tower::new(stages, bonds).unwrap();
        let ml = is_mittag_leffler(&t);
        assert!(ml.is_ml());
        for r in &ml.stages[..3] {
            assert_eq!(r.stabilized_at(), Some(r.stage));
        }
        assert_eq!(
            lim1_classification(&t),
            Lim1Classification::ZeroCertified(Lim1Certificate::Stabilized {
                indices: vec![(1, 1), (2, 2), (3, 3)]
            })
        );
        let s = stable_image_tower(&t);
        assert_eq!(s.tower, t);
        assert!(s.bonds_surjective);
    }

    #[test]
    fn finite_but_unstable_chain_certified_by_finiteness() {
        // Z/64 with ×2 bonds: orders 64, 32, 16, 8 at stage 1, horizon 4.
        let t = Tower::repeated(&Homomorphism::scalar(&FgAbGroup::cyclic(64), 2), 4);
        assert!(!is_mittag_leffler(&t).is_ml());
        assert_eq!(
            lim1_classification(&t),
            Lim1Classification::ZeroCertified(Lim1Certificate::FiniteStages)
        );
    }

    #[test]
    fn primorial_lim1_undetermined() {
        match lim1_classification(&Tower::primorial(6)) {
            Lim1Classification::UndeterminedAtHorizon { unstable } => {
                assert_eq!(unstable.len(), 5);
                assert_eq!(unstable[0], (1, (5, 6)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn epimorphism_tower_certified() {
        assert!(lim1_classification(&Tower::constant(&z(), 5)).is_zero_certified());
        assert!(lim1_classification(&Tower::scaling(-1, 5)).is_zero_certified());
    }

    #[test]
    fn stable_image_of_doubling_tower() {
        let s = stable_image_tower(&Tower::scaling(2, 6));
        assert!(!s.stabilized);
        assert!(s.bonds_surjective);
        for n in 1..=6 {
            let im = s.inclusions[n - 1].image();
            assert!(im.same_as(&multiples(1i64 << (6 - n))));
        }
    }

    #[test]
    fn stable_image_below_a_zero_bond() {
        let z2 = FgAbGroup::cyclic(2);
        let j = 3;
        let bonds = (1..6)
            .map(|n| {
                if n == j {
                    Homomorphism::zero(&z2, &z2)
                } else {
                    Homomorphism::identity(&z2)
                }
            })
            .collect();
        let t = Tower::new(vec![z2.clone(); 6], bonds).unwrap();
        let s = stable_image_tower(&t);
        for n in 1..=6 {
            assert_eq!(s.tower.stage(n).unwrap().is_trivial(), n <= j, "stage {n}");
        }
        assert!(s.stabilized);
    }

    #[test]
    fn gray_levels_of_primorial_tower() {
        let r = gray_kernel_levels(&Tower::primorial(5), 1).unwrap();
        assert_eq!(r.prefix_stages, 0);
        assert_eq!(r.tag, GrayTag::Undetermined);
        let chain = image_filtration(&r.derived, 1).unwrap();
        for (s, e) in chain.chain.iter().zip([1, 2, 6, 30, 210]) {
            assert_eq!(s.index(), Some(BigInt::from(e)));
        }
        let r = gray_kernel_levels(&Tower::primorial(5), 3).unwrap();
        assert_eq!(r.prefix_stages, 2);
        assert!(r.derived.bond(1).unwrap().is_isomorphism());
        assert!(gray_kernel_levels(&Tower::primorial(5), 6).is_err());
    }

    #[test]
    fn gray_levels_of_constant_and_finite_towers() {
        let r = gray_kernel_levels(&Tower::constant(&z(), 4), 2).unwrap();
        assert_eq!(r.derived, Tower::constant(&z(), 4));
        assert_eq!(r.tag, GrayTag::WholeLim1);
        let t = Tower::repeated(&Homomorphism::scalar(&FgAbGroup::cyclic(8), 2), 4);
        for k in 1..=4 {
            assert!(gray_kernel_levels(&t, k).unwrap().lim1.is_zero_certified());
        }
    }

    #[test]
    fn primorial_index_matches_primorial() {
        let r = image_filtration(&Tower::primorial(8), 1).unwrap();
        for (i, s) in r.chain.iter().enumerate() {
            assert_eq!(s.index(), Some(primorial(i)));
        }
    }
}
