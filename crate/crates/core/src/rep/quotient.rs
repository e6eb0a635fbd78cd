use super::Representation;
use crate::error::{param, Result};
use crate::group::HElement;
use crate::linalg::SparseIntMatrix;
use crate::ring::RingElement;

pub const MIN_QUOTIENT: u32 = 2;
pub const MAX_QUOTIENT: u32 = 12;

/// Finite quotient `H_n = (F2[u]/(u^n + 1)) x| Z/n` of order `n 2^n`, acting on
/// itself by left multiplication.
///
/// An element `(f, m)` is indexed by `m 2^n + f`, with `f` a bit mask of lit
/// lamps modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRep {
    n: u32,
}

impl QuotientRep {
    pub fn new(n: u32) -> Result<Self> {
        if !(MIN_QUOTIENT..=MAX_QUOTIENT).contains(&n) {
            return Err(param(format!("quotient cycle length {n} outside {MIN_QUOTIENT}..={MAX_QUOTIENT}")));
        }
        Ok(QuotientRep { n })
    }

    pub fn cycle_length(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.n as usize) << self.n
    }

    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Cyclic shift of a lamp mask by `m` positions.
    fn rotate(&self, f: u32, m: i64) -> u32 {
        let n = self.n;
        let m = m.rem_euclid(n as i64) as u32;
        if m == 0 {
            return f;
        }
        ((f << m) | (f >> (n - m))) & self.full()
    }

    /// Lamp `k` goes to lamp `k mod n` and the shift is taken mod `n`.
    pub fn quotient_map(&self, h: &HElement) -> (u32, u32) {
        let n = self.n as i64;
        let f = h.lamps.positions().iter().fold(0u32, |acc, &k| acc ^ (1 << k.rem_euclid(n)));
        (f, h.shift.rem_euclid(n) as u32)
    }

    pub fn mul(&self, x: (u32, u32), y: (u32, u32)) -> (u32, u32) {
        (x.0 ^ self.rotate(y.0, x.1 as i64), (x.1 + y.1) % self.n)
    }

    pub fn index(&self, x: (u32, u32)) -> usize {
        ((x.1 as usize) << self.n) | x.0 as usize
    }

    pub fn element(&self, index: usize) -> (u32, u32) {
        ((index & self.full() as usize) as u32, (index >> self.n) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Splits the left-regular image of `x` along the characters of the lamp subgroup.
    ///
    /// Right translation by lamps commutes with left multiplication, so for each
    /// character `chi_v(g) = (-1)^<v, g>` the span of
    /// `e_m = sum_g chi_v(g) [(rot_m g, m)]` is invariant. On it `(F, M)` sends
    /// `e_m'` to `chi_v(rot_{-(M+m')} F) e_{M+m'}`. The change of basis is a
    /// signed Hadamard transform, invertible over `Q` and over every odd prime
    /// field, so ranks of the blocks add up to the rank of the full matrix.
    pub fn character_blocks(&self, x: &RingElement) -> Result<Vec<SparseIntMatrix>> {
        let coeffs = integral_terms(x)?;
        let n = self.n as usize;
        let images: Vec<((u32, u32), i64)> = coeffs.iter().map(|(h, c)| (self.quotient_map(h), *c)).collect();
        (0..1u32 << self.n)
            .map(|v| {
                let mut triplets = Vec::with_capacity(n * images.len());
                for m_col in 0..self.n {
                    for &((f, shift), c) in &images {
                        let target = (shift + m_col) % self.n;
                        let twisted = self.rotate(f, -(target as i64));
                        let sign = if (v & twisted).count_ones().is_multiple_of(2) { 1 } else { -1 };
                        triplets.push((target as usize, m_col as usize, sign * c));
                    }
                }
                SparseIntMatrix::from_triplets(n, triplets)
            })
            .collect()
    }
}

pub(crate) fn integral_terms(x: &RingElement) -> Result<Vec<(HElement, i64)>> {
    let mut terms = Vec::new();
    for (h, c) in x.sorted_terms() {
        if !c.is_integer() {
            return Err(param(format!("coefficient {c} of {h} is not an integer")));
        }
        let v = i64::try_from(c.to_integer()).map_err(|_| param(format!("coefficient {c} overflows i64")))?;
        terms.push((h.clone(), v));
    }
    Ok(terms)
}

impl Representation for QuotientRep {
    fn dim(&self) -> usize {
        self.order()
    }

    fn act(&self, g: &HElement, state: usize) -> usize {
        self.index(self.mul(self.quotient_map(g), self.element(state)))
    }

    fn label(&self) -> usize {
        self.n as usize
    }
}
