//! Inverse limits at a finite horizon and the exactness of the induced
//! `lim` sequence.

use super::filtration::{lim1_classification, Lim1Classification};
use super::{Tower, TowerMap, TowerSes};
use crate::abelian::{direct_sum, DirectSum, FgAbGroup, Homomorphism, Subgroup};
use crate::error::Result;

/// Compatible tuples `(g_1, ..., g_N)` with `g_n = f_n(g_{n+1})`.
#[derive(Clone, Debug)]
pub struct LimitApprox {
    pub group: FgAbGroup,
    /// The tuple group inside `G_1 ⊕ ... ⊕ G_N`.
    pub tuples: Subgroup,
    /// `lim -> G_n` for each stage.
    pub projections: Vec<Homomorphism>,
    sum: DirectSum,
}

impl LimitApprox {
    pub fn projection(&self, n: usize) -> &Homomorphism {
        &self.projections[n - 1]
    }
}

pub fn lim_at_horizon(tower: &Tower) -> LimitApprox {
    let horizon = tower.horizon();
    let sum = direct_sum(tower.stages());
    let lower = direct_sum(&tower.stages()[..horizon - 1]);
    // d(g) = (g_n - f_n(g_{n+1}))_{n < N}; the tuples are its kernel.
    let mut d = Homomorphism::zero(&sum.group, &lower.group);
    for n in 0..horizon - 1 {
        let shifted = tower.bonds()[n]
            .after(&sum.projections[n + 1])
            .expect("bond targets stage n");
        let diff = sum.projections[n].sub(&shifted).expect("same endpoints");
        d = d
            .add(
                &lower.injections[n]
                    .after(&diff)
                    .expect("diff lands in stage n"),
            )
            .expect("same endpoints");
    }
    let tuples = d.kernel();
    let projections: Vec<Homomorphism> = sum
        .projections
        .iter()
        .map(|p| p.restrict(&tuples).expect("tuples live in the sum"))
        .collect();
    debug_assert!(
        projections.last().is_some_and(Homomorphism::is_isomorphism),
        "at a finite horizon the tuples are determined by their last entry"
    );
    LimitApprox {
        group: tuples.group().clone(),
        tuples,
        projections,
        sum,
    }
}

/// `lim f : lim S -> lim T` induced by a tower map.
fn induced_map(map: &TowerMap, source: &LimitApprox, target: &LimitApprox) -> Result<Homomorphism> {
    let mut total = Homomorphism::zero(&source.sum.group, &target.sum.group);
    for (n, f) in map.maps().iter().enumerate() {
        let piece = target.sum.injections[n].after(&f.after(&source.sum.projections[n])?)?;
        total = total.add(&piece)?;
    }
    total.restrict(&source.tuples)?.corestrict(&target.tuples)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowStatus {
    Verified,
    Failed,
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct ArrowCheck {
    pub arrow: &'static str,
    pub status: ArrowStatus,
}

#[derive(Clone, Debug)]
pub struct SixTermReport {
    pub horizon: usize,
    pub lim_kernel: LimitApprox,
    pub lim_middle: LimitApprox,
    pub lim_quotient: LimitApprox,
    pub lim_inclusion: Homomorphism,
    pub lim_projection: Homomorphism,
    pub lim1: [Lim1Classification; 3],
    pub arrows: Vec<ArrowCheck>,
}

impl SixTermReport {
    pub fn passed(&self) -> bool {
        self.arrows.iter().all(|a| a.status != ArrowStatus::Failed)
    }
}

/// Checks `0 -> lim K -> lim G -> lim H` and, when `lim¹` of all three towers
/// is certified zero, the surjectivity of `lim G -> lim H`.
pub fn six_term_check(ses: &TowerSes) -> Result<SixTermReport> {
    let lim_kernel = lim_at_horizon(ses.kernel());
    let lim_middle = lim_at_horizon(ses.middle());
    let lim_quotient = lim_at_horizon(ses.quotient());
    let lim_inclusion = induced_map(ses.inclusion(), &lim_kernel, &lim_middle)?;
    let lim_projection = induced_map(ses.projection(), &lim_middle, &lim_quotient)?;
    let lim1 = [
        lim1_classification(ses.kernel()),
        lim1_classification(ses.middle()),
        lim1_classification(ses.quotient()),
    ];

    let verdict = |ok: bool| {
        if ok {
            ArrowStatus::Verified
        } else {
            ArrowStatus::Failed
        }
    };
    let mut arrows = vec![
        ArrowCheck {
            arrow: "0 -> lim K -> lim G",
            status: verdict(lim_inclusion.is_injective()),
        },
        ArrowCheck {
            arrow: "lim K -> lim G -> lim H",
            status: verdict(
                lim_projection.after(&lim_inclusion)?.is_zero()
                    && lim_inclusion.image().same_as(&lim_projection.kernel()),
            ),
        },
    ];
    let surjectivity = if lim1.iter().all(Lim1Classification::is_zero_certified) {
        verdict(lim_projection.is_surjective())
    } else {
        ArrowStatus::Skipped("lim¹ not certified zero at this horizon".into())
    };
    arrows.push(ArrowCheck {
        arrow: "lim G -> lim H -> 0",
        status: surjectivity,
    });

    Ok(SixTermReport {
        horizon: ses.horizon(),
        lim_kernel,
        lim_middle,
        lim_quotient,
        lim_inclusion,
        lim_projection,
        lim1,
        arrows,
    })
}
