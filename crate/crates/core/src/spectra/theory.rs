//! Moments and projector values of the limit measure, truncated at `q <= q_max`.
//!
//! Two routes are kept. The float route sums `weight * f(4 cos(p pi / q))` over
//! the atom table in double-double arithmetic. The exact route uses that the
//! primitive `q`-th roots of unity are permuted by Galois, so
//! `sum_p (z^p)^m` over `gcd(p, q) = 1` is the Ramanujan sum `c_q(m)`, an integer.
//! Writing `lambda^2 = 4 (2 + z + 1/z)` turns both series into binomial sums of
//! Ramanujan sums.
//!
//! Tail: for `q > Q` each `q` carries total mass `phi(q)/(2^q - 1) <= q 2^(1-q)`,
//! and `sum_{q > Q} q 2^(1-q) = (Q + 2) / 2^(Q-1)`. Moments are multiplied by
//! `16^k` since `|lambda| < 4`; projector terms `(1 - lambda^2/16)^k` are at most 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use twofloat::TwoFloat;

use super::atoms::atom_weight;
use crate::error::{param, Result};

/// A truncated series value with a rigorous bound on the discarded part.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    /// The same truncated sum computed exactly.
    pub exact: BigRational,
}

impl SeriesValue {
    pub fn agrees_with(&self, reference: f64, slack: f64) -> bool {
        (self.value - reference).abs() <= self.tail_bound + slack
    }
}

/// `(Q + 2) / 2^(Q-1)`, exact.
pub fn mass_tail_bound(q_max: u32) -> BigRational {
    BigRational::new(BigInt::from(q_max + 2), BigInt::one() << (q_max as usize - 1))
}

fn check_q_max(q_max: u32) -> Result<()> {
    if q_max < 2 {
        return Err(param(format!("q_max must be at least 2, got {q_max}")));
    }
    Ok(())
}

/// `sum weight * lambda^(2k)` over atoms with `q <= q_max`.
pub fn theoretical_moment(k: u32, q_max: u32) -> Result<SeriesValue> {
    check_q_max(q_max)?;
    let value = float_series(q_max, |c| {
        let lambda_sq = TwoFloat::from(16.0) * c * c;
        pow(lambda_sq, k)
    });
    let exact = exact_series(
        q_max,
        |q| {
            let four_k = BigInt::from(4).pow(k);
            binomial_row(2 * k)
                .iter()
                .enumerate()
                .map(|(j, b)| b * ramanujan_sum(q, j as i64 - k as i64))
                .sum::<BigInt>()
                * four_k
        },
        BigInt::one(),
    );
    let tail = mass_tail_bound(q_max) * BigInt::from(16).pow(k);
    Ok(SeriesValue { value, tail_bound: to_f64_up(&tail), exact })
}

/// `sum weight * (1 - lambda^2/16)^k` over atoms with `q <= q_max`.
pub fn theoretical_projector(k: u32, q_max: u32) -> Result<SeriesValue> {
    check_q_max(q_max)?;
    if k == 0 {
        return Err(param("projector power must be at least 1"));
    }
    let value = float_series(q_max, |c| pow(TwoFloat::from(1.0) - c * c, k));
    // (1 - lambda^2/16)^k = (-1)^k 4^-k sum_j (-1)^j C(2k, j) z^(j-k)
    let exact = exact_series(
        q_max,
        |q| {
            let s: BigInt = binomial_row(2 * k)
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let term = b * ramanujan_sum(q, j as i64 - k as i64);
                    if j % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            if k.is_multiple_of(2) {
                s
            } else {
                -s
            }
        },
        BigInt::from(4).pow(k),
    );
    Ok(SeriesValue { value, tail_bound: to_f64_up(&mass_tail_bound(q_max)), exact })
}

/// Sums `weight(q) * f(cos(p pi / q))` in double-double precision.
fn float_series(q_max: u32, f: impl Fn(TwoFloat) -> TwoFloat) -> f64 {
    let mut total = TwoFloat::from(0.0);
    for q in 2..=q_max {
        let mut per_q = TwoFloat::from(0.0);
        for p in (1..q).filter(|p| p.gcd(&q) == 1) {
            let angle = twofloat::consts::PI * TwoFloat::from(p) / TwoFloat::from(q);
            per_q += f(angle.cos());
        }
        let denom = TwoFloat::from(2.0).powi(q as i32) - TwoFloat::from(1.0);
        total += per_q / denom;
    }
    total.into()
}

/// `sum_q weight(q) * numer(q) / denom`.
fn exact_series(q_max: u32, numer: impl Fn(u32) -> BigInt, denom: BigInt) -> BigRational {
    let sum = (2..=q_max).fold(BigRational::zero(), |acc, q| acc + atom_weight(q) * numer(q));
    sum / denom
}

/// `x^k` with `0^0 = 1`, which twofloat's `powi` does not give.
fn pow(x: TwoFloat, k: u32) -> TwoFloat {
    (0..k).fold(TwoFloat::from(1.0), |acc, _| acc * x)
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let next = row[i as usize].clone() * (n - i) / (i + 1);
        row.push(next);
    }
    row
}

pub fn mobius(n: u32) -> i32 {
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `c_q(m) = sum_{d | gcd(q, m)} mu(q/d) d`, the sum of `m`-th powers of the primitive `q`-th roots of unity.
pub fn ramanujan_sum(q: u32, m: i64) -> BigInt {
    let g = (m.unsigned_abs()).gcd(&(q as u64)) as u32;
    let g = if m == 0 { q } else { g };
    (1..=g).filter(|d| g % d == 0).map(|d| BigInt::from(mobius(q / d)) * d).sum()
}

/// Converts to f64 and nudges up one ulp so the bound stays an upper bound.
fn to_f64_up(r: &BigRational) -> f64 {
    let v = r.to_f64().unwrap_or(f64::INFINITY);
    v + v.abs() * f64::EPSILON
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::atoms::euler_phi;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ramanujan_sums_match_direct_cosine_sums() {
        for qq in 2..=24u32 {
            assert_eq!(ramanujan_sum(qq, 0), BigInt::from(euler_phi(qq)));
            for m in -5..=5i64 {
                let direct: f64 = (1..qq)
                    .filter(|p| p.gcd(&qq) == 1)
                    .map(|p| (2.0 * std::f64::consts::PI * p as f64 * m as f64 / qq as f64).cos())
                    .sum();
                let c = ramanujan_sum(qq, m).to_f64().unwrap();
                assert!((direct - c).abs() < 1e-9, "q={qq} m={m}: {direct} vs {c}");
            }
        }
    }

    #[test]
    fn small_truncations_are_exact() {
        let m = theoretical_moment(1, 3).unwrap();
        assert_eq!(m.exact, q(8, 7));
        assert!((m.value - 8.0 / 7.0).abs() < 1e-15);
        assert!(m.tail_bound > 4.0 - 8.0 / 7.0);

        let p = theoretical_projector(1, 2).unwrap();
        assert_eq!(p.exact, q(1, 3));
        assert!(p.tail_bound > 5.0 / 12.0);
        assert_eq!(theoretical_moment(0, 3).unwrap().exact, q(13, 21));
    }

    #[test]
    fn q_equal_four_contributes_sixteen_fifteenths_to_the_second_moment() {
        let three = theoretical_moment(1, 3).unwrap().exact;
        let four = theoretical_moment(1, 4).unwrap().exact;
        assert_eq!(four - three, q(16, 15));
    }

    #[test]
    fn routes_agree() {
        for k in 0..=6 {
            let m = theoretical_moment(k, 40).unwrap();
            let e = m.exact.to_f64().unwrap();
            assert!((m.value - e).abs() <= 1e-12 * e.abs().max(1.0), "k={k}");
        }
        for k in 1..=6 {
            let p = theoretical_projector(k, 40).unwrap();
            assert!((p.value - p.exact.to_f64().unwrap()).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn limits() {
        let m0 = theoretical_moment(0, 40).unwrap();
        assert!((m0.value - 1.0).abs() < 1e-9);
        assert!((theoretical_moment(1, 40).unwrap().value - 4.0).abs() < 1e-6);
        assert!((theoretical_projector(1, 40).unwrap().value - 0.75).abs() < 1e-6);
        // Atoms near 0 at odd q decay like exp(-k pi^2 / 4q^2): still ~5e-5 above 1/3 at k = 200.
        let excess = theoretical_projector(200, 40).unwrap().value - 1.0 / 3.0;
        assert!(excess > 1e-6 && excess < 1e-4, "{excess}");
        assert!((theoretical_projector(1000, 40).unwrap().value - 1.0 / 3.0).abs() < 1e-6);
        assert!(theoretical_projector(0, 40).is_err());
        assert!(theoretical_moment(1, 1).is_err());
    }
}
