use std::fmt;
use std::str::FromStr;

use super::lamps::LampConfig;
use crate::error::{param, Error, Result};

/// Element `(f, m)` of the lamplighter group `H = (sum_Z Z/2) x| Z` in normal form.
///
/// The group law is `(f, m)(g, n) = (f + shift_m(g), m + n)`: the left shift
/// translates the right lamp pattern. Under this convention `t^-1 a t` is the
/// lamp at `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElement {
    pub lamps: LampConfig,
    pub shift: i64,
}

impl HElement {
    pub fn new(lamps: LampConfig, shift: i64) -> Self {
        HElement { lamps, shift }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// The lamp at the origin, `a = (..., 0, 1, 0, ...)`.
    pub fn a() -> Self {
        HElement::new(LampConfig::single(0), 0)
    }

    /// Generator of the `Z` factor.
    pub fn t() -> Self {
        HElement::new(LampConfig::empty(), 1)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.lamps.is_empty()
    }

    pub fn mul(&self, other: &HElement) -> HElement {
        HElement { lamps: self.lamps.xor(&other.lamps.shifted(self.shift)), shift: self.shift + other.shift }
    }

    pub fn inv(&self) -> HElement {
        HElement { lamps: self.lamps.shifted(-self.shift), shift: -self.shift }
    }

    pub fn pow(&self, e: i64) -> HElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = HElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `g^-1 x g`.
    pub fn conj(&self, g: &HElement) -> HElement {
        g.inv().mul(self).mul(g)
    }

    /// The injective endomorphism fixing `t` and sending `a` to `a t^-1 a t`.
    ///
    /// On lamps this is multiplication by `1 + u^-1`.
    pub fn alpha(&self) -> HElement {
        HElement { lamps: self.lamps.times_one_plus_inv_u(), shift: self.shift }
    }

    pub fn alpha_pow(&self, k: u64) -> HElement {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.alpha();
        }
        x
    }

    /// Membership in `alpha(H)`: the lamp polynomial must be divisible by `1 + u^-1`,
    /// i.e. have an even number of lit lamps.
    pub fn in_image_alpha(&self) -> bool {
        self.lamps.len().is_multiple_of(2)
    }

    pub fn alpha_preimage(&self) -> Result<HElement> {
        let lamps = self
            .lamps
            .divide_one_plus_inv_u()
            .ok_or_else(|| Error::Domain(format!("{self} is not in the image of alpha")))?;
        Ok(HElement { lamps, shift: self.shift })
    }
}

impl std::ops::Mul for &HElement {
    type Output = HElement;
    fn mul(self, rhs: &HElement) -> HElement {
        HElement::mul(self, rhs)
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lamps{};shift={}", self.lamps, self.shift)
    }
}

impl FromStr for HElement {
    type Err = Error;

    /// Parses the canonical form `lamps{k1,k2,...};shift=m`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || param(format!("cannot parse H element {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("lamps{").ok_or_else(bad)?;
        let (inner, rest) = rest.split_once('}').ok_or_else(bad)?;
        let shift = rest.trim().strip_prefix(";shift=").ok_or_else(bad)?;
        let shift: i64 = shift.trim().parse().map_err(|_| bad())?;
        let mut positions = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            positions.push(tok.parse::<i64>().map_err(|_| bad())?);
        }
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != positions.len() {
            return Err(param(format!("repeated lamp position in {s:?}")));
        }
        Ok(HElement::new(LampConfig::from_toggles(positions), shift))
    }
}
