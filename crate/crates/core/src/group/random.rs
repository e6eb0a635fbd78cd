//! Random element generators for property checks.

use rand::Rng;

use super::{GElement, HElement, LampConfig, Letter, Word};

/// Random `H` element with lamps in `[-lamp_radius, lamp_radius]` and `|shift| <= shift_radius`.
pub fn random_h<R: Rng>(rng: &mut R, lamp_radius: i64, shift_radius: i64) -> HElement {
    let count = rng.gen_range(0..=(2 * lamp_radius + 1) as usize);
    let lamps = LampConfig::from_toggles((0..count).map(|_| rng.gen_range(-lamp_radius..=lamp_radius)));
    HElement::new(lamps, rng.gen_range(-shift_radius..=shift_radius))
}

/// Random reduced `G` element with `i, j <= s_radius`.
pub fn random_g<R: Rng>(rng: &mut R, lamp_radius: i64, shift_radius: i64, s_radius: u64) -> GElement {
    let h = random_h(rng, lamp_radius, shift_radius);
    GElement::new(rng.gen_range(0..=s_radius), h, rng.gen_range(0..=s_radius))
}

/// Random element of the commutator subgroup `G'`: `s^i (f, 0) s^-i`, reduced.
pub fn random_commutator_element<R: Rng>(rng: &mut R, lamp_radius: i64, s_radius: u64) -> GElement {
    let h = random_h(rng, lamp_radius, 0);
    let i = rng.gen_range(0..=s_radius);
    GElement::new(i, h, i)
}

/// Random word in `a, t, s` of the given length, then balanced so the
/// exponent sums of `t` and `s` vanish; the product lies in `G'`.
pub fn random_balanced_word<R: Rng>(rng: &mut R, len: usize) -> Word {
    const LETTERS: [Letter; 6] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv, Letter::S, Letter::SInv];
    let mut w: Word = (0..len).map(|_| LETTERS[rng.gen_range(0..6)]).collect();
    let (mut t, mut s) = (0i64, 0i64);
    for l in &w {
        match l.exponent() {
            (1, e) => t += e,
            (2, e) => s += e,
            _ => {}
        }
    }
    w.extend(super::power(Letter::T, -t));
    w.extend(super::power(Letter::S, -s));
    w
}
