//! Enumeration oracles for finite groups. Nothing here uses Smith normal
//! form: groups are walked element by element and maps are evaluated
//! pointwise, so these results can cross-check the structural algorithms.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::abelian::{FgAbGroup, GroupElement, Homomorphism};
use crate::towers::{Tower, TowerMap, TowerSes};

/// All elements of a finite group, in lexicographic coordinate order.
///
/// Panics on infinite groups.
pub fn elements(group: &FgAbGroup) -> Vec<GroupElement> {
    assert!(group.is_finite(), "cannot enumerate an infinite group");
    let orders: Vec<u64> = group
        .torsion()
        .iter()
        .map(|d| d.to_u64().expect("enumerable order"))
        .collect();
    let mut out = Vec::new();
    let mut coords = vec![0u64; orders.len()];
    loop {
        out.push(
            group
                .element(coords.iter().copied())
                .expect("coordinates in range"),
        );
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < orders[i] {
                break;
            }
            coords[i] = 0;
        }
    }
}

fn key(x: &GroupElement) -> Vec<BigInt> {
    x.coords().to_vec()
}

pub fn image_size(f: &Homomorphism) -> usize {
    elements(f.source())
        .iter()
        .map(|x| key(&f.apply(x)))
        .collect::<HashSet<_>>()
        .len()
}

pub fn kernel_size(f: &Homomorphism) -> usize {
    elements(f.source())
        .iter()
        .filter(|x| f.apply(x).is_zero())
        .count()
}

/// `|Im(G_k -> G_n)|` for `k = n..=N`, by applying the bonds one at a time.
pub fn image_chain_sizes(tower: &Tower, n: usize) -> Vec<usize> {
    let horizon = tower.horizon();
    (n..=horizon)
        .map(|k| {
            let mut image: HashSet<Vec<BigInt>> =
                elements(&tower.stages()[k - 1]).iter().map(key).collect();
            for m in (n..k).rev() {
                let bond = &tower.bonds()[m - 1];
                image = image
                    .iter()
                    .map(|c| {
                        let x = bond
                            .source()
                            .element(c.iter().cloned())
                            .expect("stage element");
                        key(&bond.apply(&x))
                    })
                    .collect();
            }
            image.len()
        })
        .collect()
}

/// Compatible tuples `(g_1, ..., g_N)`, built from stage 1 upwards by
/// choosing each `g_{n+1}` among the preimages of `g_n`.
pub fn lim_tuples(tower: &Tower) -> Vec<Vec<GroupElement>> {
    let mut tuples: Vec<Vec<GroupElement>> = elements(&tower.stages()[0])
        .into_iter()
        .map(|g| vec![g])
        .collect();
    for bond in tower.bonds() {
        let mut fibres: HashMap<Vec<BigInt>, Vec<GroupElement>> = HashMap::new();
        for g in elements(bond.source()) {
            fibres.entry(key(&bond.apply(&g))).or_default().push(g);
        }
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let last = key(t.last().expect("non-empty tuple"));
                fibres
                    .get(&last)
                    .into_iter()
                    .flatten()
                    .map(move |g| {
                        let mut next = t.clone();
                        next.push(g.clone());
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    tuples
}

pub fn lim_order(tower: &Tower) -> BigInt {
    BigInt::from(lim_tuples(tower).len())
}

fn apply_levelwise(map: &TowerMap, tuple: &[GroupElement]) -> Vec<Vec<BigInt>> {
    map.maps()
        .iter()
        .zip(tuple)
        .map(|(f, g)| key(&f.apply(g)))
        .collect()
}

fn tuple_key(tuple: &[GroupElement]) -> Vec<Vec<BigInt>> {
    tuple.iter().map(key).collect()
}

/// Exactness of `0 -> lim K -> lim G -> lim H -> 0` decided on sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteSixTerm {
    pub injective: bool,
    pub exact_middle: bool,
    pub surjective: bool,
    pub lim_orders: [usize; 3],
}

pub fn six_term_brute(ses: &TowerSes) -> BruteSixTerm {
    let k = lim_tuples(ses.kernel());
    let g = lim_tuples(ses.middle());
    let h = lim_tuples(ses.quotient());

    let incl_image: HashSet<_> = k
        .iter()
        .map(|t| apply_levelwise(ses.inclusion(), t))
        .collect();
    let proj_kernel: HashSet<_> = g
        .iter()
        .filter(|t| {
            ses.projection()
                .maps()
                .iter()
                .zip(t.iter())
                .all(|(f, x)| f.apply(x).is_zero())
        })
        .map(|t| tuple_key(t))
        .collect();
    let proj_image: HashSet<_> = g
        .iter()
        .map(|t| apply_levelwise(ses.projection(), t))
        .collect();

    BruteSixTerm {
        injective: incl_image.len() == k.len(),
        exact_middle: incl_image == proj_kernel,
        surjective: proj_image.len() == h.len(),
        lim_orders: [k.len(), g.len(), h.len()],
    }
}

/// The order of an element by repeated addition.
pub fn element_order(x: &GroupElement) -> BigInt {
    let mut n = BigInt::one();
    let mut y = x.clone();
    while !y.is_zero() {
        y = y.add(x);
        n += 1;
    }
    n
}
