use std::fmt;

use super::g::GElement;
use super::h::HElement;
use crate::error::{param, Result};

/// Generator letter of the presentation `<a, t, s | ...>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    AInv,
    T,
    TInv,
    S,
    SInv,
}

pub type Word = Vec<Letter>;

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
            Letter::S => Letter::SInv,
            Letter::SInv => Letter::S,
        }
    }

    /// Column in the generator order `(a, t, s)` and the exponent sign.
    pub fn exponent(self) -> (usize, i64) {
        match self {
            Letter::A => (0, 1),
            Letter::AInv => (0, -1),
            Letter::T => (1, 1),
            Letter::TInv => (1, -1),
            Letter::S => (2, 1),
            Letter::SInv => (2, -1),
        }
    }

    fn as_h(self) -> Option<HElement> {
        match self {
            Letter::A | Letter::AInv => Some(HElement::a()),
            Letter::T => Some(HElement::t()),
            Letter::TInv => Some(HElement::t().inv()),
            Letter::S | Letter::SInv => None,
        }
    }

    fn as_g(self) -> GElement {
        match self {
            Letter::S => GElement::s(),
            Letter::SInv => GElement::s().inv(),
            other => GElement::from_h(other.as_h().expect("non-stable letter")),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::AInv => "a^-1",
            Letter::T => "t",
            Letter::TInv => "t^-1",
            Letter::S => "s",
            Letter::SInv => "s^-1",
        })
    }
}

/// Inverse word.
pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// `g^k` as a word, for any integer `k`.
pub fn power(letter: Letter, k: i64) -> Word {
    let l = if k < 0 { letter.inverse() } else { letter };
    vec![l; k.unsigned_abs() as usize]
}

/// Commutator `[x, y] = x^-1 y^-1 x y`.
pub fn commutator(x: &[Letter], y: &[Letter]) -> Word {
    [invert(x), invert(y), x.to_vec(), y.to_vec()].concat()
}

/// Parses whitespace- or `*`-separated tokens such as `a t^-1 a t` or `t^3`.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut word = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| param(format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        let letter = match base {
            "a" => Letter::A,
            "t" => Letter::T,
            "s" => Letter::S,
            _ => return Err(param(format!("unknown generator letter {tok:?}"))),
        };
        word.extend(power(letter, exp));
    }
    Ok(word)
}

/// Left-to-right product in `H`; the stable letter is rejected.
pub fn h_eval_word(word: &[Letter]) -> Result<HElement> {
    word.iter().try_fold(HElement::identity(), |acc, &l| {
        let g = l.as_h().ok_or_else(|| param(format!("letter {l} is not a generator of the lamplighter group")))?;
        Ok(acc.mul(&g))
    })
}

/// Left-to-right product in `G`.
pub fn g_eval_word(word: &[Letter]) -> GElement {
    word.iter().fold(GElement::identity(), |acc, &l| acc.mul(&l.as_g()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn evaluation_examples() {
        assert!(h_eval_word(&[A, A]).unwrap().is_identity());
        assert!(h_eval_word(&[TInv, A, T, A, TInv, AInv, T, AInv]).unwrap().is_identity());
        assert!(h_eval_word(&[]).unwrap().is_identity());
        assert!(h_eval_word(&[S]).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_word("a t^-1 a t").unwrap(), vec![A, TInv, A, T]);
        assert_eq!(parse_word("t^3*s^-1").unwrap(), vec![T, T, T, SInv]);
        assert_eq!(parse_word("").unwrap(), Vec::<Letter>::new());
        assert!(parse_word("b").is_err());
        assert!(parse_word("a^x").is_err());
    }

    #[test]
    fn alpha_of_a_is_its_defining_word() {
        assert_eq!(HElement::a().alpha(), h_eval_word(&[A, TInv, A, T]).unwrap());
    }
}
