use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so all divisions are exact.
pub fn rank_bareiss(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}
