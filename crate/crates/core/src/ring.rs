//! The rational group ring `Q[H]`: convolution, involution, the canonical
//! trace, the operator `A`, its even moments and the projector bounds
//! `s_k = tau((1 - A^2/16)^k)` on the kernel dimension of `A`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{HElement, LampConfig};

/// Support ceiling for a single convolution.
pub const DEFAULT_SUPPORT_LIMIT: usize = 20_000_000;

/// `||A||^2` bound used to contract the spectrum into `[0, 1]`.
pub const NORM_SQUARED_BOUND: i64 = 16;

/// Finitely supported map `H -> Q` with no stored zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: HashMap<HElement, BigRational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::delta(HElement::identity())
    }

    pub fn delta(h: HElement) -> Self {
        let mut terms = HashMap::new();
        terms.insert(h, BigRational::one());
        RingElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (HElement, BigRational)>) -> Self {
        let mut x = Self::zero();
        for (h, c) in terms {
            x.add_term(h, c);
        }
        x
    }

    pub fn from_int_terms(terms: impl IntoIterator<Item = (HElement, i64)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(h, c)| (h, BigRational::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, h: HElement, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(h.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&h);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, h: &HElement) -> BigRational {
        self.terms.get(h).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HElement, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(&HElement, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> RingElement {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(h, v)| (h.clone(), v * c)).collect() }
    }

    /// Convolution `(x y)(g) = sum_{h k = g} x(h) y(k)`.
    pub fn mul(&self, other: &RingElement) -> RingElement {
        convolve(self, other, usize::MAX).expect("unbounded convolution cannot hit the ceiling")
    }

    /// Convolution that aborts once the result support would exceed `limit`.
    pub fn mul_bounded(&self, other: &RingElement, limit: usize) -> std::result::Result<RingElement, usize> {
        convolve(self, other, limit)
    }

    /// `sum c_g g -> sum c_g g^-1` (coefficients are real).
    pub fn involution(&self) -> RingElement {
        RingElement { terms: self.terms.iter().map(|(h, c)| (h.inv(), c.clone())).collect() }
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> BigRational {
        self.coefficient(&HElement::identity())
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn convolve(x: &RingElement, y: &RingElement, limit: usize) -> std::result::Result<RingElement, usize> {
    let mut terms: HashMap<HElement, BigRational> = HashMap::with_capacity(x.terms.len() * y.terms.len().min(8));
    for (g, cg) in &x.terms {
        for (h, ch) in &y.terms {
            let gh = g.mul(h);
            *terms.entry(gh).or_insert_with(BigRational::zero) += cg * ch;
            if terms.len() > limit {
                return Err(terms.len());
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(RingElement { terms })
}

/// `A = t + at + t^-1 + (at)^-1`, four times the simple random walk operator.
pub fn markov_a() -> RingElement {
    let t = HElement::t();
    let at = HElement::new(LampConfig::single(0), 1);
    RingElement::from_int_terms([(t.inv(), 1), (at.inv(), 1), (t, 1), (at, 1)])
}

/// `[tau(A^0), tau(A^2), ..., tau(A^(2 max_k))]`.
pub fn even_moments(max_k: usize) -> Result<Vec<BigRational>> {
    even_moments_bounded(max_k, DEFAULT_SUPPORT_LIMIT)
}

pub fn even_moments_bounded(max_k: usize, limit: usize) -> Result<Vec<BigRational>> {
    match even_moments_partial(max_k, limit) {
        (moments, None) => Ok(moments),
        (_, Some(err)) => Err(err),
    }
}

/// The moments computed before the support ceiling was hit, and the error that stopped them.
///
/// Uses `tau(A^2k) = |A^k delta_e|^2`, valid since `A` is self-adjoint.
pub fn even_moments_partial(max_k: usize, limit: usize) -> (Vec<BigRational>, Option<Error>) {
    let a = markov_a();
    let mut v = RingElement::one();
    let mut moments = vec![norm_squared(&v)];
    for k in 1..=max_k {
        match a.mul_bounded(&v, limit) {
            Ok(next) => v = next,
            Err(support) => return (moments, Some(Error::Resource { k, support, limit })),
        }
        moments.push(norm_squared(&v));
    }
    (moments, None)
}

/// `s_k = sum_i C(k, i) (-1/16)^i tau(A^(2i))` for `k = 1..=max_k`.
///
/// Each `s_k` bounds `dim ker A` from above and the sequence decreases to it.
pub fn projector_sequence(max_k: usize) -> Result<Vec<BigRational>> {
    let moments = even_moments(max_k)?;
    Ok(projector_from_moments(&moments, max_k))
}

pub fn projector_from_moments(moments: &[BigRational], max_k: usize) -> Vec<BigRational> {
    let step = BigRational::new(BigInt::from(-1), BigInt::from(NORM_SQUARED_BOUND));
    (1..=max_k)
        .map(|k| {
            let mut binom = BigInt::one();
            let mut power = BigRational::one();
            let mut s = BigRational::zero();
            for (i, m) in moments.iter().enumerate().take(k + 1) {
                s += BigRational::from_integer(binom.clone()) * &power * m;
                binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
                power *= &step;
            }
            s
        })
        .collect()
}

/// `tau(x x*) = sum |c_g|^2`.
pub fn norm_squared(x: &RingElement) -> BigRational {
    x.terms.values().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_is_neutral() {
        let x = markov_a();
        assert_eq!(RingElement::one().mul(&x), x);
        assert_eq!(x.mul(&RingElement::one()), x);
    }

    #[test]
    fn lamp_squares_to_one() {
        let a = RingElement::delta(HElement::a());
        assert_eq!(a.mul(&a), RingElement::one());
    }

    #[test]
    fn symmetric_shift_square() {
        let t = HElement::t();
        let x = RingElement::from_int_terms([(t.clone(), 1), (t.inv(), 1)]);
        let expected = RingElement::from_int_terms([(t.pow(2), 1), (HElement::identity(), 2), (t.pow(-2), 1)]);
        assert_eq!(x.mul(&x), expected);
    }

    #[test]
    fn involution_examples() {
        let t = HElement::t();
        assert_eq!(RingElement::delta(t.clone()).involution(), RingElement::delta(t.inv()));
        assert_eq!(markov_a().involution(), markov_a());
        assert_eq!(RingElement::one().involution(), RingElement::one());
    }

    #[test]
    fn traces() {
        assert_eq!(RingElement::one().trace(), q(1, 1));
        let a = markov_a();
        assert_eq!(a.support_size(), 4);
        assert_eq!(a.trace(), q(0, 1));
        assert_eq!(a.mul(&a).trace(), q(4, 1));
    }

    #[test]
    fn first_moments_and_projectors() {
        let m = even_moments(1).unwrap();
        assert_eq!(m, vec![q(1, 1), q(4, 1)]);
        assert_eq!(projector_sequence(1).unwrap(), vec![q(3, 4)]);
    }

    #[test]
    fn resource_ceiling_reports_k() {
        // A delta_e has support 4 and A^2 delta_e has support 13
        let err = even_moments_bounded(3, 10).unwrap_err();
        assert!(matches!(err, Error::Resource { k: 2, limit: 10, .. }), "{err:?}");
        let (partial, err) = even_moments_partial(3, 10);
        assert_eq!(partial, vec![q(1, 1), q(4, 1)]);
        assert!(err.is_some());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let h = HElement::a();
        let x = RingElement::from_terms([(h.clone(), q(1, 2)), (h, q(-1, 2))]);
        assert!(x.is_zero());
    }
}
