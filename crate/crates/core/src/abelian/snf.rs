//! Smith normal form with unimodular transforms.
//!
//! Pivot rule: the nonzero entry of least absolute value in the active
//! submatrix, ties broken by lowest `(row, col)`. The rule is re-applied
//! every time a reduction leaves a remainder, so the pivot strictly
//! decreases in absolute value until it divides its row and column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;

/// `left * input * right == diagonal`, with `left`/`right` unimodular.
///
/// The inverses are tracked alongside so that callers can move between the
/// original and the diagonalized coordinates without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: Matrix,
    pub left_inv: Matrix,
    pub diagonal: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| self.diagonal[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(input: &Matrix) -> SmithForm {
    let (m, n) = (input.rows(), input.cols());
    let mut a = input.clone();
    let mut left = Matrix::identity(m);
    let mut left_inv = Matrix::identity(m);
    let mut right = Matrix::identity(n);
    let mut right_inv = Matrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = min_pivot(&a, t) else {
            break;
        };
        move_pivot(
            &mut a,
            &mut left,
            &mut left_inv,
            &mut right,
            &mut right_inv,
            t,
            pr,
            pc,
        );

        loop {
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&pivot);
                // row_i -= q * row_t
                let neg = -&q;
                a.add_row_multiple(i, t, &neg);
                left.add_row_multiple(i, t, &neg);
                left_inv.add_col_multiple(t, i, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&pivot);
                // col_j -= q * col_t
                let neg = -&q;
                a.add_col_multiple(j, t, &neg);
                right.add_col_multiple(j, t, &neg);
                right_inv.add_row_multiple(t, j, &q);
                clean &= a[(t, j)].is_zero();
            }

            if clean {
                // Divisibility: fold an offending row into the pivot row and go again.
                let offending =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
                match offending {
                    None => break,
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row_multiple(t, i, &one);
                        left.add_row_multiple(t, i, &one);
                        left_inv.add_col_multiple(i, t, &-one);
                    }
                }
            }

            let (pr, pc) = min_pivot(&a, t).expect("active block has a nonzero entry");
            move_pivot(
                &mut a,
                &mut left,
                &mut left_inv,
                &mut right,
                &mut right_inv,
                t,
                pr,
                pc,
            );
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
            left_inv.negate_col(t);
        }
        t += 1;
    }

    SmithForm {
        left,
        left_inv,
        diagonal: a,
        right,
        right_inv,
        rank: t,
    }
}

fn min_pivot(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| abs < *b) {
                best = Some((abs, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

#[allow(clippy::too_many_arguments)]
fn move_pivot(
    a: &mut Matrix,
    left: &mut Matrix,
    left_inv: &mut Matrix,
    right: &mut Matrix,
    right_inv: &mut Matrix,
    t: usize,
    pr: usize,
    pc: usize,
) {
    a.swap_rows(t, pr);
    left.swap_rows(t, pr);
    left_inv.swap_cols(t, pr);
    a.swap_cols(t, pc);
    right.swap_cols(t, pc);
    right_inv.swap_rows(t, pc);
}
