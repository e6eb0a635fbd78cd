use std::fmt;
use std::str::FromStr;

use super::h::HElement;
use crate::error::{param, Error, Result};

/// Element `s^i h s^-j` of the ascending HNN extension `G = <H, s | s^-1 h s = alpha(h)>`.
///
/// Values are kept Britton-reduced: `i == 0`, `j == 0`, or `h` lies outside
/// `alpha(H)`. Reduced forms are unique, so equality is field-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    i: u64,
    h: HElement,
    j: u64,
}

/// Abelianization image `G -> Z^2`, recording the exponents of `t` and `s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianImage {
    pub t_exp: i64,
    pub s_exp: i64,
}

impl AbelianImage {
    pub fn is_trivial(&self) -> bool {
        self.t_exp == 0 && self.s_exp == 0
    }
}

/// Order of a group element; finite orders other than 1 and 2 do not occur in `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementOrder {
    One,
    Two,
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementOrder::One => "1",
            ElementOrder::Two => "2",
            ElementOrder::Infinite => "infinite",
        })
    }
}

impl GElement {
    /// Builds `s^i h s^-j` and Britton-reduces it.
    pub fn new(i: u64, h: HElement, j: u64) -> Self {
        let mut x = GElement { i, h, j };
        x.reduce();
        x
    }

    /// Builds without reducing; only for tests of the reduction itself.
    #[doc(hidden)]
    pub fn new_unreduced(i: u64, h: HElement, j: u64) -> Self {
        GElement { i, h, j }
    }

    pub fn identity() -> Self {
        Self::from_h(HElement::identity())
    }

    pub fn from_h(h: HElement) -> Self {
        GElement { i: 0, h, j: 0 }
    }

    /// The stable letter.
    pub fn s() -> Self {
        GElement { i: 1, h: HElement::identity(), j: 0 }
    }

    pub fn a() -> Self {
        Self::from_h(HElement::a())
    }

    pub fn t() -> Self {
        Self::from_h(HElement::t())
    }

    pub fn parts(&self) -> (u64, &HElement, u64) {
        (self.i, &self.h, self.j)
    }

    pub fn is_reduced(&self) -> bool {
        self.i == 0 || self.j == 0 || !self.h.in_image_alpha()
    }

    /// Applies `(i, h, j) -> (i - 1, alpha^-1(h), j - 1)` until it no longer applies.
    /// Returns the number of steps taken; each strictly decreases `min(i, j)`.
    pub fn reduce(&mut self) -> u64 {
        let mut steps = 0;
        while self.i > 0 && self.j > 0 {
            let Ok(pre) = self.h.alpha_preimage() else { break };
            self.h = pre;
            self.i -= 1;
            self.j -= 1;
            steps += 1;
        }
        steps
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0 && self.h.is_identity()
    }

    pub fn mul(&self, other: &GElement) -> GElement {
        let (i, h, j) = (self.i, &self.h, self.j);
        let (k, g, l) = (other.i, &other.h, other.j);
        // s^-j s^k collapses; h or g is pushed across the surplus s-power via alpha
        if k >= j {
            GElement::new(i + k - j, h.alpha_pow(k - j).mul(g), l)
        } else {
            GElement::new(i, h.mul(&g.alpha_pow(j - k)), l + j - k)
        }
    }

    pub fn inv(&self) -> GElement {
        GElement { i: self.j, h: self.h.inv(), j: self.i }
    }

    pub fn pow(&self, e: i64) -> GElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = GElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `g^-1 x g`.
    pub fn conj(&self, g: &GElement) -> GElement {
        g.inv().mul(self).mul(g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, other: &GElement) -> GElement {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn in_h(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    pub fn abelian_image(&self) -> AbelianImage {
        AbelianImage { t_exp: self.h.shift, s_exp: self.i as i64 - self.j as i64 }
    }

    /// Elements with nonzero abelian image have infinite order; the kernel of the
    /// abelianization is elementary abelian of exponent 2, which is checked here.
    pub fn order(&self) -> Result<ElementOrder> {
        if self.is_identity() {
            return Ok(ElementOrder::One);
        }
        if !self.abelian_image().is_trivial() {
            return Ok(ElementOrder::Infinite);
        }
        let sq = self.mul(self);
        if sq.is_identity() {
            Ok(ElementOrder::Two)
        } else {
            Err(Error::Invariant(format!("{self} lies in the commutator subgroup but its square is {sq}")))
        }
    }
}

impl std::ops::Mul for &GElement {
    type Output = GElement;
    fn mul(self, rhs: &GElement) -> GElement {
        GElement::mul(self, rhs)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{} * {} * s^-{}", self.i, self.h, self.j)
    }
}

impl FromStr for GElement {
    type Err = Error;

    /// Parses `s^i * lamps{...};shift=m * s^-j`; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || param(format!("cannot parse G element {s:?}"));
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        let [left, mid, right] = parts.as_slice() else { return Err(bad()) };
        let i: u64 = left.strip_prefix("s^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let j: u64 = right.strip_prefix("s^-").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(GElement::new(i, mid.parse()?, j))
    }
}
