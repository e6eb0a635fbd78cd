use super::poly::{mask, mul_mod, one_plus_u_pow};
use super::Representation;
use crate::error::{param, Result};
use crate::group::HElement;

pub const MAX_TREE_LEVEL: u32 = 16;

/// Action of `H` on level `n` of the rooted binary tree.
///
/// A vertex is a bit-word `b0 b1 ... b(n-1)`, read as `b0 + b1 u + ...` in
/// `F2[u]/(u^n)`. The element `(f, m)` acts affinely by
/// `x -> (1+u)^m x + sum_{k in f} (1+u)^k`; so `a` adds 1 and `t` multiplies by `1 + u`.
/// Truncating a word to its first `n` letters intertwines levels `n + 1` and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRep {
    n: u32,
    a_perm: Vec<u32>,
    t_perm: Vec<u32>,
    t_inv_perm: Vec<u32>,
}

/// Image of `(f, m)` applied to `state` at level `n`; `state` must fit in `n` bits.
pub fn tree_action(x: &HElement, state: u32, n: u32) -> Result<u32> {
    if n == 0 || n > MAX_TREE_LEVEL {
        return Err(param(format!("tree level {n} outside 1..={MAX_TREE_LEVEL}")));
    }
    if state & !mask(n) != 0 {
        return Err(param(format!("state {state:#b} is longer than level {n}")));
    }
    Ok(act_unchecked(x, state, n))
}

fn act_unchecked(x: &HElement, state: u32, n: u32) -> u32 {
    let translation = x.lamps.positions().iter().fold(0u32, |acc, &k| acc ^ one_plus_u_pow(k, n));
    mul_mod(one_plus_u_pow(x.shift, n), state, n) ^ translation
}

/// Parses a bit-word such as `"10"` (coefficient of `u^0` first).
pub fn parse_bitword(word: &str) -> Result<(u32, u32)> {
    let n = word.len() as u32;
    if n == 0 || n > MAX_TREE_LEVEL {
        return Err(param(format!("bit-word {word:?} must have length 1..={MAX_TREE_LEVEL}")));
    }
    let mut state = 0;
    for (i, ch) in word.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => state |= 1 << i,
            _ => return Err(param(format!("bit-word {word:?} contains {ch:?}"))),
        }
    }
    Ok((state, n))
}

pub fn format_bitword(state: u32, n: u32) -> String {
    (0..n).map(|i| if state >> i & 1 == 1 { '1' } else { '0' }).collect()
}

impl LevelRep {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_TREE_LEVEL {
            return Err(param(format!("tree level {n} outside 1..={MAX_TREE_LEVEL}")));
        }
        let size = 1u32 << n;
        let t = HElement::t();
        let a_perm = (0..size).map(|x| x ^ 1).collect();
        let t_perm = (0..size).map(|x| act_unchecked(&t, x, n)).collect();
        let t_inv_perm = (0..size).map(|x| act_unchecked(&t.inv(), x, n)).collect();
        Ok(LevelRep { n, a_perm, t_perm, t_inv_perm })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn a_perm(&self) -> &[u32] {
        &self.a_perm
    }

    pub fn t_perm(&self) -> &[u32] {
        &self.t_perm
    }

    pub fn t_inv_perm(&self) -> &[u32] {
        &self.t_inv_perm
    }

    /// Action obtained by composing generator tables along a word in `a, t^{+-1}`.
    pub fn act_by_tables(&self, word: &[crate::group::Letter], state: u32) -> Result<u32> {
        use crate::group::Letter;
        // left action: the rightmost letter acts first
        word.iter().rev().try_fold(state, |s, l| match l {
            Letter::A | Letter::AInv => Ok(self.a_perm[s as usize]),
            Letter::T => Ok(self.t_perm[s as usize]),
            Letter::TInv => Ok(self.t_inv_perm[s as usize]),
            _ => Err(param("the stable letter does not act on the tree")),
        })
    }
}

impl Representation for LevelRep {
    fn dim(&self) -> usize {
        1 << self.n
    }

    fn act(&self, g: &HElement, state: usize) -> usize {
        act_unchecked(g, state as u32, self.n) as usize
    }

    fn label(&self) -> usize {
        self.n as usize
    }
}
