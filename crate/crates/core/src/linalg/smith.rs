//! Smith normal form over the integers.
//!
//! Only the invariant factors are produced; the unimodular transforms are
//! never needed by the callers in this crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Nonzero invariant factors `d1 | d2 | ... | dr` of `m`, where `r` is the rank.
///
/// The cokernel of the row lattice is `Z^(cols - r) + sum Z/di`.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&a, t) else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            if clear_row_and_col(&mut a, t) {
                // everything outside (t, t) in row/col t is zero; enforce divisibility
                match non_divisible_entry(&a, t) {
                    Some(i) => add_row(&mut a, t, i),
                    None => break,
                }
            }
            if let Some((pr, pc)) = min_abs_entry(&a, t) {
                a.swap_rows(t, pr);
                a.swap_cols(t, pc);
            }
        }
        factors.push(a[(t, t)].abs());
        t += 1;
    }
    factors
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Reduces row `t` and column `t` by the pivot at `(t, t)`.
/// Returns true when both are clear apart from the pivot.
fn clear_row_and_col(a: &mut IntMatrix, t: usize) -> bool {
    let pivot = a[(t, t)].clone();
    let mut clean = true;
    for i in t + 1..a.rows() {
        if a[(i, t)].is_zero() {
            continue;
        }
        let q = a[(i, t)].div_floor(&pivot);
        for j in t..a.cols() {
            let delta = &q * &a[(t, j)];
            a[(i, j)] -= delta;
        }
        clean &= a[(i, t)].is_zero();
    }
    for j in t + 1..a.cols() {
        if a[(t, j)].is_zero() {
            continue;
        }
        let q = a[(t, j)].div_floor(&pivot);
        for i in t..a.rows() {
            let delta = &q * &a[(i, t)];
            a[(i, j)] -= delta;
        }
        clean &= a[(t, j)].is_zero();
    }
    clean
}

fn non_divisible_entry(a: &IntMatrix, t: usize) -> Option<usize> {
    let pivot = &a[(t, t)];
    (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !a[(i, j)].is_multiple_of(pivot)))
}

fn add_row(a: &mut IntMatrix, target: usize, source: usize) {
    for j in 0..a.cols() {
        let v = a[(source, j)].clone();
        a[(target, j)] += v;
    }
}
