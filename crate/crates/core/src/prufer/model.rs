use num_bigint::BigInt;

use super::{in_a0n, PrimeWindow, PruferClass, PruferElement};
use crate::abelian::{
    presentation, quotient, FgAbGroup, GroupElement, Homomorphism, Matrix, Subgroup,
};
use crate::error::{Error, Result};
use crate::primes::next_prime_at_least;
use crate::towers::{Tower, TowerMap, TowerSes};

/// Stage `m` of the torsion model: `∏_{p >= ℓ(m)} Z/p^∞`, where `ℓ(m)` is the
/// smallest prime `>= m`, taken modulo the diagonal only when `m = 1`.
///
/// Each factor of the modelled groups also carries a real summand, a rational
/// vector space of continuum dimension. It has no finite representation and
/// is reported as a tag, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubTowerModel {
    m: usize,
    ell: u64,
    support: Vec<u64>,
}

impl SubTowerModel {
    pub const REAL_SUMMAND_TAG: &'static str = "⊕ R (uncountable rational summand, symbolic)";

    pub fn m(&self) -> usize {
        self.m
    }

    /// Smallest prime `>= m`.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// Primes of the window carrying a `Z/p^∞` factor.
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn quotient_by_diagonal(&self) -> bool {
        self.m == 1
    }

    /// Whether `x` vanishes below `ℓ(m)`.
    pub fn contains(&self, x: &PruferElement) -> bool {
        x.window()
            .primes()
            .iter()
            .zip(x.coords())
            .all(|(&p, c)| p >= self.ell || c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct PhantomTowerModel {
    window: PrimeWindow,
    stages: Vec<SubTowerModel>,
}

impl PhantomTowerModel {
    pub fn window(&self) -> &PrimeWindow {
        &self.window
    }

    pub fn stages(&self) -> &[SubTowerModel] {
        &self.stages
    }

    pub fn stage(&self, m: usize) -> Option<&SubTowerModel> {
        m.checked_sub(1).and_then(|i| self.stages.get(i))
    }

    /// The `n` with `Im(stage m -> stage 1) = A_0^(n)`: the number of window
    /// primes below `ℓ(m)`.
    pub fn stage1_filtration_index(&self, m: usize) -> Result<usize> {
        let stage = self.stage(m).ok_or(Error::IndexOutOfRange {
            index: m,
            max: self.stages.len(),
        })?;
        Ok(self
            .window
            .primes()
            .iter()
            .take_while(|&&p| p < stage.ell)
            .count())
    }

    /// Whether a class of stage 1 comes from stage `m`.
    pub fn stage1_image_contains(&self, class: &PruferClass, m: usize) -> Result<bool> {
        Ok(in_a0n(class, self.stage1_filtration_index(m)?)?.is_member())
    }
}

pub fn build_phantom_tower_model(window: &PrimeWindow, max_m: usize) -> Result<PhantomTowerModel> {
    let largest = window.largest().unwrap_or(0);
    if max_m == 0 || max_m as u64 > largest {
        return Err(Error::WindowTooSmall {
            window: window.len(),
            m: max_m,
        });
    }
    let stages = (1..=max_m)
        .map(|m| {
            let ell = next_prime_at_least(m as u64);
            SubTowerModel {
                m,
                ell,
                support: window
                    .primes()
                    .iter()
                    .copied()
                    .filter(|&p| p >= ell)
                    .collect(),
            }
        })
        .collect();
    Ok(PhantomTowerModel {
        window: window.clone(),
        stages,
    })
}

/// A finitely generated stand-in for `0 -> {K_n} -> {A_n} -> {A_0^(n)} -> 0`.
///
/// `Z/p^∞` is cut down to `Z/p^exponent` for each prime of the window, the
/// diagonal becomes `d = (p^{e-1})_p`, `A_n` is the subgroup vanishing at the
/// first `n` primes, `A_0 = A/<d>` and `K_n = ker(A_n -> A_0) = k(n)<d>`.
/// Stages run over `n = 1..=horizon`; at `horizon = window.len()` the top
/// stage `A_N` is zero.
pub fn truncated_prufer_ses(
    window: &PrimeWindow,
    exponent: u32,
    horizon: usize,
) -> Result<TowerSes> {
    if exponent == 0 {
        return Err(Error::InvalidCoordinate("exponent must be positive".into()));
    }
    if horizon == 0 || horizon > window.len() {
        return Err(Error::IndexOutOfRange {
            index: horizon,
            max: window.len(),
        });
    }
    let w = window.len();
    let orders: Vec<BigInt> = window
        .primes()
        .iter()
        .map(|&p| BigInt::from(p).pow(exponent))
        .collect();
    let pres = presentation(w, &Matrix::diagonal(&orders));
    let ambient = pres.group.clone();
    let basis = |i: usize| ambient.element_unchecked(pres.project.column(i));
    let mut diag = ambient.zero();
    for (i, &p) in window.primes().iter().enumerate() {
        diag = diag.add(&basis(i).scale(&BigInt::from(p).pow(exponent - 1)));
    }
    let to_a0 = quotient(&ambient, &[diag]).projection;

    let a: Vec<Subgroup> = (1..=horizon)
        .map(|n| {
            let gens: Vec<GroupElement> = (n..w).map(basis).collect();
            Subgroup::generated_by(&ambient, &gens)
        })
        .collect();
    let a0: Vec<Subgroup> = a
        .iter()
        .map(|s| to_a0.restrict(s).map(|f| f.image()))
        .collect::<Result<_>>()?;
    // K_n inside A_n, and the same subgroup seen inside A.
    let k_in_a: Vec<Subgroup> = a
        .iter()
        .map(|s| to_a0.restrict(s).map(|f| f.kernel()))
        .collect::<Result<_>>()?;
    let k_ambient: Vec<Subgroup> = a
        .iter()
        .zip(&k_in_a)
        .map(|(s, k)| {
            Subgroup::generated_by(
                &ambient,
                &k.generators()
                    .iter()
                    .map(|g| s.inclusion().apply(g))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();

    let nested = |subs: &[Subgroup]| -> Result<Vec<Homomorphism>> {
        subs.windows(2)
            .map(|p| p[1].inclusion().corestrict(&p[0]))
            .collect()
    };
    let groups = |subs: &[Subgroup]| {
        subs.iter()
            .map(|s| s.group().clone())
            .collect::<Vec<FgAbGroup>>()
    };

    let a_tower = Tower::new(groups(&a), nested(&a)?)?;
    let a0_tower = Tower::new(groups(&a0), nested(&a0)?)?;
    let k_tower = Tower::new(groups(&k_ambient), nested(&k_ambient)?)?;

    let incl = k_ambient
        .iter()
        .zip(&a)
        .map(|(k, s)| k.inclusion().corestrict(s))
        .collect::<Result<Vec<_>>>()?;
    let proj = a
        .iter()
        .zip(&a0)
        .map(|(s, q)| to_a0.restrict(s)?.corestrict(q))
        .collect::<Result<Vec<_>>>()?;

    TowerSes::new(
        TowerMap::new(k_tower, a_tower.clone(), incl)?,
        TowerMap::new(a_tower, a0_tower, proj)?,
    )
}

#[cfg(test)]
mod tests {
    use super::super::ClassLiteral;
    use super::*;
    use crate::primes::primorial;
    use crate::towers::six_term_check;

    #[test]
    fn model_supports() {
        let w = PrimeWindow::first(6);
        let model = build_phantom_tower_model(&w, 4).unwrap();
        let s1 = model.stage(1).unwrap();
        assert!(s1.quotient_by_diagonal());
        assert_eq!(s1.support(), w.primes());
        assert_eq!(model.stage(3).unwrap().support(), &[3, 5, 7, 11, 13]);
        let s4 = model.stage(4).unwrap();
        assert_eq!(s4.ell(), 5);
        assert_eq!(s4.support(), &[5, 7, 11, 13]);
        assert!(!s4.quotient_by_diagonal());
        assert_eq!(model.stage1_filtration_index(4).unwrap(), 2);
        assert!(build_phantom_tower_model(&PrimeWindow::first(2), 4).is_err());
        assert!(build_phantom_tower_model(&w, 0).is_err());
    }

    #[test]
    fn stage_membership() {
        let w = PrimeWindow::first(4);
        let model = build_phantom_tower_model(&w, 6).unwrap();
        let x = "5:1,7:3"
            .parse::<ClassLiteral>()
            .unwrap()
            .element(&w)
            .unwrap();
        assert!(model.stage(5).unwrap().contains(&x));
        assert!(!model.stage(6).unwrap().contains(&x));
        let c = PruferClass::new(
            "2:1,3:2,25:1,7:3"
                .parse::<ClassLiteral>()
                .unwrap()
                .element(&w)
                .unwrap(),
        );
        assert!(model.stage1_image_contains(&c, 3).unwrap());
        assert!(model.stage1_image_contains(&c, 5).unwrap());
        assert!(!model.stage1_image_contains(&c, 6).unwrap());
    }

    #[test]
    fn truncated_sequence_kernels_are_primorial_multiples() {
        let w = PrimeWindow::first(4);
        let ses = truncated_prufer_ses(&w, 2, 3).unwrap();
        // K_n ≅ Z/(k(4)/k(n)) generated by k(n)·d.
        for n in 1..=3 {
            let order = ses.kernel().stage(n).unwrap().order().unwrap();
            assert_eq!(order, primorial(4) / primorial(n));
        }
    }

    #[test]
    fn truncated_sequence_at_full_horizon_has_zero_limit() {
        let w = PrimeWindow::first(4);
        let ses = truncated_prufer_ses(&w, 2, 4).unwrap();
        let r = six_term_check(&ses).unwrap();
        assert!(r.passed());
        assert!(r.lim_middle.group.is_trivial());
        assert!(r.lim_kernel.group.is_trivial());
        assert!(r.lim_quotient.group.is_trivial());
    }
}
