use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{param, Result};

/// Atom of the spectral measure of `A` at `4 cos(p pi / q)` with mass `1/(2^q - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub p: u32,
    pub q: u32,
    pub lambda: f64,
    pub weight: BigRational,
}

/// All atoms with `2 <= q <= q_max`, `1 <= p < q`, `gcd(p, q) = 1`, ordered by `(q, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomTable {
    pub q_max: u32,
    pub entries: Vec<Atom>,
}

pub fn atom_weight(q: u32) -> BigRational {
    BigRational::new(BigInt::one(), (BigInt::one() << q as usize) - 1)
}

pub fn atom_table(q_max: u32) -> Result<AtomTable> {
    if q_max < 2 {
        return Err(param(format!("q_max must be at least 2, got {q_max}")));
    }
    let mut entries = Vec::new();
    for q in 2..=q_max {
        let weight = atom_weight(q);
        for p in (1..q).filter(|p| p.gcd(&q) == 1) {
            let lambda = 4.0 * (std::f64::consts::PI * p as f64 / q as f64).cos();
            entries.push(Atom { p, q, lambda, weight: weight.clone() });
        }
    }
    Ok(AtomTable { q_max, entries })
}

impl AtomTable {
    /// The atom sitting at an integer point, if any (0, 2 and -2 carry atoms; +-4 do not).
    pub fn atom_at_integer(&self, lambda: i64) -> Option<&Atom> {
        self.entries.iter().find(|a| (a.lambda - lambda as f64).abs() < 1e-9)
    }
}

/// Mass at `lambda` in the limit measure: `1/(2^q - 1)` at an atom, else 0.
pub fn integer_atom_mass(lambda: i64) -> BigRational {
    atom_table(3)
        .expect("q_max = 3 is valid")
        .atom_at_integer(lambda)
        .map_or_else(BigRational::zero, |a| a.weight.clone())
}

pub fn euler_phi(n: u32) -> u32 {
    let (mut n, mut phi, mut d) = (n, n, 2);
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            phi -= phi / d;
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// `sum_{q=2}^{q_max} phi(q) / (2^q - 1)`, exact.
pub fn total_atom_mass(q_max: u32) -> Result<BigRational> {
    if q_max < 2 {
        return Err(param(format!("q_max must be at least 2, got {q_max}")));
    }
    Ok((2..=q_max).fold(BigRational::zero(), |acc, q| acc + atom_weight(q) * BigInt::from(euler_phi(q))))
}
