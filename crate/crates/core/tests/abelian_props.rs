use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use towerlim_core::abelian::{presentation, smith_normal_form};
use towerlim_core::{brute, random, FgAbGroup, Matrix};

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-50i64..=50, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            Matrix::from_rows(c, &rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix_strategy()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.left * &m) * &s.right, s.diagonal.clone());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        prop_assert_eq!(&s.left * &s.left_inv, Matrix::identity(m.rows()));
        prop_assert_eq!(&s.right * &s.right_inv, Matrix::identity(m.cols()));
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                if i != j {
                    prop_assert!(s.diagonal[(i, j)].is_zero());
                }
            }
        }
        let d = s.invariant_factors();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        for i in s.rank..m.rows().min(m.cols()) {
            prop_assert!(s.diagonal[(i, i)].is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_nullity_for_free_groups(m in matrix_strategy()) {
        let f = towerlim_core::Homomorphism::new(
            FgAbGroup::free(m.cols()),
            FgAbGroup::free(m.rows()),
            m.clone(),
        ).unwrap();
        let ker = f.kernel();
        let im = f.image();
        prop_assert!(ker.group().torsion().is_empty());
        prop_assert!(im.group().torsion().is_empty());
        prop_assert_eq!(ker.group().rank() + im.group().rank(), m.cols());
    }

    #[test]
    fn presentation_ignores_relation_order(m in matrix_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.column(j)).collect();
        cols.shuffle(&mut random::rng(seed));
        let permuted = Matrix::from_columns(m.rows(), &cols);
        prop_assert_eq!(presentation(m.rows(), &m).group, presentation(m.rows(), &permuted).group);
    }

    #[test]
    fn structure_matches_enumeration(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::finite_group(&mut rng, 64);
        let h = random::finite_group(&mut rng, 64);
        let f = random::homomorphism(&mut rng, &g, &h, 0);
        let ker = BigInt::from(brute::kernel_size(&f));
        let im = BigInt::from(brute::image_size(&f));
        prop_assert_eq!(f.kernel().group().order().unwrap(), ker.clone());
        prop_assert_eq!(f.image().group().order().unwrap(), im.clone());
        prop_assert_eq!(ker * im, g.order().unwrap());
        let coker = f.cokernel().group.order().unwrap();
        prop_assert_eq!(coker * BigInt::from(brute::image_size(&f)), h.order().unwrap());
    }

    #[test]
    fn element_orders_match_enumeration(seed in any::<u64>()) {
        use towerlim_core::abelian::ElementOrder;
        let mut rng = random::rng(seed);
        let g = random::finite_group(&mut rng, 64);
        for x in brute::elements(&g) {
            prop_assert_eq!(x.order(), ElementOrder::Finite(brute::element_order(&x)));
        }
    }
}
