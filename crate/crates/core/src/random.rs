//! Seeded instance generators. The same seed always yields the same
//! instances, so every randomized check is reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{direct_sum, FgAbGroup, Homomorphism, Matrix};
use crate::prufer::{PrimeWindow, PruferClass, PruferCoord, PruferElement};
use crate::towers::{Tower, TowerMap, TowerSes};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A matrix of the given shape with entries in `[-bound, bound]`.
pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    Matrix::from_rows(cols, &data)
}

/// A finite abelian group of order at most `max_order`, built from up to
/// three cyclic factors.
pub fn finite_group<R: Rng>(rng: &mut R, max_order: u64) -> FgAbGroup {
    let mut orders = Vec::new();
    let mut remaining = max_order.max(1);
    for _ in 0..rng.gen_range(0..=3) {
        if remaining < 2 {
            break;
        }
        let d = rng.gen_range(2..=remaining);
        orders.push(BigInt::from(d));
        remaining /= d;
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

/// A uniformly chosen homomorphism between groups in invariant-factor form.
///
/// Generator `j` (order `d_j`) may go to `m` times target generator `i`
/// (order `t_i`) exactly when `t_i | m·d_j`, i.e. `m` is a multiple of
/// `t_i / gcd(d_j, t_i)`. Entries into free generators are drawn from
/// `[-bound, bound]`.
pub fn homomorphism<R: Rng>(
    rng: &mut R,
    source: &FgAbGroup,
    target: &FgAbGroup,
    bound: i64,
) -> Homomorphism {
    let mut m = Matrix::zeros(target.num_generators(), source.num_generators());
    for i in 0..target.num_generators() {
        let t = target.generator_order(i);
        for j in 0..source.num_generators() {
            let d = source.generator_order(j);
            let entry = match (t.is_zero(), d.is_zero()) {
                (true, false) => BigInt::zero(),
                (true, true) => BigInt::from(rng.gen_range(-bound..=bound)),
                (false, _) => {
                    let g = d.gcd(&t);
                    let step = &t / &g;
                    let choices = u64::try_from(&g).unwrap_or(u64::MAX);
                    step * rng.gen_range(0..choices.max(1))
                }
            };
            m[(i, j)] = entry;
        }
    }
    Homomorphism::new(source.clone(), target.clone(), m).expect("entries chosen to be well defined")
}

/// A tower of finite groups of order at most `max_order` with random bonds.
pub fn finite_tower<R: Rng>(rng: &mut R, horizon: usize, max_order: u64) -> Tower {
    let stages: Vec<FgAbGroup> = (0..horizon).map(|_| finite_group(rng, max_order)).collect();
    let bonds = (1..horizon)
        .map(|n| homomorphism(rng, &stages[n], &stages[n - 1], 0))
        .collect();
    Tower::new(stages, bonds).expect("bonds built between consecutive stages")
}

/// A levelwise-split sequence `0 -> K -> K ⊕ H -> H -> 0` whose middle bonds
/// are `[[f_K, c], [0, f_H]]` for a random twist `c : H_{n+1} -> K_n`.
pub fn split_ses<R: Rng>(rng: &mut R, horizon: usize, max_order: u64) -> TowerSes {
    let kernel = finite_tower(rng, horizon, max_order);
    let quotient = finite_tower(rng, horizon, max_order);
    let sums: Vec<_> = kernel
        .stages()
        .iter()
        .zip(quotient.stages())
        .map(|(k, h)| direct_sum(&[k.clone(), h.clone()]))
        .collect();

    let bonds = (0..horizon.saturating_sub(1))
        .map(|n| {
            let (up, down) = (&sums[n + 1], &sums[n]);
            let twist = homomorphism(rng, &quotient.stages()[n + 1], &kernel.stages()[n], 0);
            let compose = |inj: &Homomorphism, f: &Homomorphism, proj: &Homomorphism| {
                inj.after(&f.after(proj).expect("f starts at the summand"))
                    .expect("f ends at the summand")
            };
            let diag_k = compose(&down.injections[0], &kernel.bonds()[n], &up.projections[0]);
            let diag_h = compose(
                &down.injections[1],
                &quotient.bonds()[n],
                &up.projections[1],
            );
            let off = compose(&down.injections[0], &twist, &up.projections[1]);
            diag_k
                .add(&diag_h)
                .and_then(|b| b.add(&off))
                .expect("same endpoints")
        })
        .collect();
    let middle =
        Tower::new(sums.iter().map(|s| s.group.clone()).collect(), bonds).expect("valid bonds");
    let incl = sums.iter().map(|s| s.injections[0].clone()).collect();
    let proj = sums.iter().map(|s| s.projections[1].clone()).collect();
    TowerSes::new(
        TowerMap::new(kernel, middle.clone(), incl).expect("block-triangular bonds preserve K"),
        TowerMap::new(middle, quotient, proj).expect("block-triangular bonds descend to H"),
    )
    .expect("a split sequence is exact")
}

fn prufer_coord<R: Rng>(rng: &mut R, p: u64) -> PruferCoord {
    let e = match rng.gen_range(0..10) {
        0..=2 => 0,
        3..=7 => 1,
        8 => 2,
        _ => 3,
    };
    let q = BigInt::from(p).pow(e);
    let m = rng.gen_range(0..u64::try_from(&q).expect("small prime power"));
    PruferCoord::new(p, BigInt::from(m), e)
}

/// An element over the first `1..=max_window` primes. Coordinates are zero,
/// of prime order or of order `p^2`, `p^3` with probabilities about
/// 3:5:1:1, then shifted by a random multiple of the diagonal.
pub fn prufer_element<R: Rng>(rng: &mut R, max_window: usize) -> PruferElement {
    let window = PrimeWindow::first(rng.gen_range(1..=max_window.max(1)));
    let coords: Vec<(BigInt, u32)> = window
        .primes()
        .iter()
        .map(|&p| {
            let c = prufer_coord(rng, p);
            (c.numerator().clone(), c.exponent())
        })
        .collect();
    let x = PruferElement::new(&window, &coords).expect("coordinates fit the window");
    let k = BigInt::from(rng.gen_range(0..1_000_000u64));
    x.add(&PruferElement::diag_embed(&k, &window))
        .expect("same window")
}

pub fn prufer_class<R: Rng>(rng: &mut R, max_window: usize) -> PruferClass {
    PruferClass::new(prufer_element(rng, max_window))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = finite_tower(&mut rng(3), 5, 64);
        let b = finite_tower(&mut rng(3), 5, 64);
        assert_eq!(a.stages(), b.stages());
        assert_eq!(a.bonds(), b.bonds());
    }

    #[test]
    fn bounded_orders() {
        let mut r = rng(11);
        for _ in 0..200 {
            let g = finite_group(&mut r, 64);
            assert!(g.order().unwrap() <= BigInt::from(64));
        }
    }

    #[test]
    fn split_sequences_build() {
        let mut r = rng(5);
        for _ in 0..20 {
            let ses = split_ses(&mut r, 4, 16);
            assert_eq!(ses.horizon(), 4);
        }
    }

    #[test]
    fn homomorphisms_into_free_groups() {
        let mut r = rng(1);
        let src = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let f = homomorphism(&mut r, &src, &FgAbGroup::free(2), 5);
        assert!(f.matrix().column(0).iter().all(Zero::is_zero));
    }
}
