use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use towerlim_core::towers::{
    image_filtration, is_mittag_leffler, lim1_classification, lim_at_horizon, six_term_check,
    stable_image_tower, ArrowStatus, Lim1Certificate, Lim1Classification, ResidueTower,
    StageStatus,
};
use towerlim_core::{brute, random, Tower};

#[test]
fn primorial_tower_never_stabilizes() {
    for horizon in [2, 3, 10, 25, 50] {
        let tower = Tower::primorial(horizon);
        let ml = is_mittag_leffler(&tower);
        assert!(!ml.is_ml());
        for r in &ml.stages[..horizon - 1] {
            assert_eq!(
                r.status,
                StageStatus::Unstable {
                    witness: (horizon - 1, horizon)
                }
            );
            assert!(
                r.strictly_decreasing(),
                "stage {} at horizon {horizon}",
                r.stage
            );
        }
        assert!(matches!(
            lim1_classification(&tower),
            Lim1Classification::UndeterminedAtHorizon { .. }
        ));
    }
}

#[test]
fn primorial_chain_indices() {
    let r = image_filtration(&Tower::primorial(4), 1).unwrap();
    let idx: Vec<BigInt> = r.chain.iter().map(|s| s.index().unwrap()).collect();
    assert_eq!(idx, [1, 2, 6, 30].map(BigInt::from));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn chains_descend_and_match_enumeration(seed in any::<u64>(), horizon in 1usize..=6) {
        let tower = random::finite_tower(&mut random::rng(seed), horizon, 64);
        for n in 1..=horizon {
            let r = image_filtration(&tower, n).unwrap();
            prop_assert!(r.descending);
            for w in r.chain.windows(2) {
                prop_assert!(w[0].contains_subgroup(&w[1]));
            }
            let orders: Vec<usize> = r
                .chain
                .iter()
                .map(|s| usize::try_from(s.group().order().unwrap()).unwrap())
                .collect();
            prop_assert_eq!(orders, brute::image_chain_sizes(&tower, n));
        }
    }

    #[test]
    fn finite_towers_have_certified_zero_lim1(seed in any::<u64>(), horizon in 1usize..=6) {
        let tower = random::finite_tower(&mut random::rng(seed), horizon, 64);
        let c = lim1_classification(&tower);
        prop_assert!(c.is_zero_certified());
        if is_mittag_leffler(&tower).is_ml() {
            let is_stabilized = matches!(c, Lim1Classification::ZeroCertified(Lim1Certificate::Stabilized { .. }));
            prop_assert!(is_stabilized);
        }
    }

    #[test]
    fn limits_match_enumeration(seed in any::<u64>(), horizon in 1usize..=5) {
        let tower = random::finite_tower(&mut random::rng(seed), horizon, 64);
        let l = lim_at_horizon(&tower);
        prop_assert_eq!(l.group.order().unwrap(), brute::lim_order(&tower));
    }

    #[test]
    fn stable_images_map_onto_each_other_when_stabilized(seed in any::<u64>(), horizon in 2usize..=6) {
        let tower = random::finite_tower(&mut random::rng(seed), horizon, 64);
        let s = stable_image_tower(&tower);
        if s.stabilized {
            prop_assert!(s.bonds_surjective);
        }
    }

    #[test]
    fn split_sequences_pass_and_agree_with_enumeration(seed in any::<u64>(), horizon in 1usize..=4) {
        let ses = random::split_ses(&mut random::rng(seed), horizon, 16);
        let r = six_term_check(&ses).unwrap();
        prop_assert!(r.passed());
        let b = brute::six_term_brute(&ses);
        prop_assert!(b.injective && b.exact_middle && b.surjective);
        prop_assert_eq!(r.arrows[2].status.clone(), ArrowStatus::Verified);
        let orders = [&r.lim_kernel, &r.lim_middle, &r.lim_quotient]
            .map(|l| usize::try_from(l.group.order().unwrap()).unwrap());
        prop_assert_eq!(orders, b.lim_orders);
    }
}

fn moduli(chain: &[u64]) -> Vec<BigInt> {
    let mut acc = 1u64;
    chain
        .iter()
        .map(|m| {
            acc *= m;
            BigInt::from(acc)
        })
        .collect()
}

proptest! {
    #[test]
    fn residue_towers_form_a_group(
        steps in prop::collection::vec(1u64..=7, 1..=6),
        a in any::<i64>(),
        b in any::<i64>(),
        c in any::<i64>(),
    ) {
        let m = moduli(&steps);
        let x = ResidueTower::from_integer(m.clone(), &BigInt::from(a)).unwrap();
        let y = ResidueTower::from_integer(m.clone(), &BigInt::from(b)).unwrap();
        let z = ResidueTower::from_integer(m.clone(), &BigInt::from(c)).unwrap();
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert!(x.add(&x.negate()).unwrap().is_zero());
        let zero = ResidueTower::from_integer(m.clone(), &BigInt::from(0)).unwrap();
        prop_assert_eq!(x.add(&zero).unwrap(), x.clone());
        // Integer images differ by the integer a - b, pinned modulo a_N.
        let k = x.is_diagonal_at_horizon(&y).unwrap();
        let top = m.last().unwrap();
        prop_assert_eq!(k, (BigInt::from(a) - BigInt::from(b)).mod_floor(top));
    }
}
