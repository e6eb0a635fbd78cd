//! The finite presentation of `G`, the relation family of `H`, and the
//! abelianization computed from relator exponent sums.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::word::{commutator, g_eval_word, h_eval_word, invert, power, Letter, Word};
use crate::linalg::{smith_normal_form, IntMatrix};

/// Default bound on `k, n` in the relations `[t^-k a t^k, t^-n a t^n] = 1`.
pub const DEFAULT_RELATION_BOUND: i64 = 8;

#[derive(Clone, Debug)]
pub struct Relator {
    pub name: String,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    /// Generator count; letters map to columns by [`Letter::exponent`].
    pub generators: usize,
    pub relators: Vec<Relator>,
}

/// `t^-k a t^k`.
pub fn lamp_word(k: i64) -> Word {
    [power(Letter::T, -k), vec![Letter::A], power(Letter::T, k)].concat()
}

impl Presentation {
    /// `G = <a, t, s | a^2, [t, s], [t^-1 a t, a], s^-1 a s = a t^-1 a t>`.
    pub fn hnn() -> Self {
        use Letter::*;
        let relators = vec![
            Relator { name: "a^2".into(), word: vec![A, A] },
            Relator { name: "[t,s]".into(), word: commutator(&[T], &[S]) },
            Relator { name: "[t^-1 a t,a]".into(), word: commutator(&lamp_word(1), &[A]) },
            Relator {
                name: "s^-1 a s = a t^-1 a t".into(),
                word: [vec![SInv, A, S], invert(&[A, TInv, A, T])].concat(),
            },
        ];
        Presentation { generators: 3, relators }
    }

    /// `H = <a, t | a^2, [t^-k a t^k, t^-n a t^n] for 0 <= k, n <= bound>`.
    pub fn lamplighter(bound: i64) -> Self {
        let mut relators = vec![Relator { name: "a^2".into(), word: vec![Letter::A, Letter::A] }];
        for k in 0..=bound {
            for n in 0..=bound {
                relators.push(Relator {
                    name: format!("[t^-{k} a t^{k},t^-{n} a t^{n}]"),
                    word: commutator(&lamp_word(k), &lamp_word(n)),
                });
            }
        }
        Presentation { generators: 2, relators }
    }

    pub fn free(generators: usize) -> Self {
        Presentation { generators, relators: Vec::new() }
    }

    /// Relator-by-generator matrix of exponent sums.
    pub fn exponent_matrix(&self) -> Option<IntMatrix> {
        if self.relators.is_empty() || self.generators == 0 {
            return None;
        }
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators).ok()?;
        for (r, rel) in self.relators.iter().enumerate() {
            for l in &rel.word {
                let (c, e) = l.exponent();
                m[(r, c)] += e;
            }
        }
        Some(m)
    }

    pub fn abelianization(&self) -> Abelianization {
        let factors = self.exponent_matrix().map(|m| smith_normal_form(&m)).unwrap_or_default();
        let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        Abelianization { free_rank: self.generators - factors.len(), factors, torsion }
    }
}

/// `Z^free_rank + sum Z/d` for `d` in `torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    /// All nonzero invariant factors, including trivial ones.
    pub factors: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().filter_map(|d| d.to_u64()).collect()
    }
}

pub fn abelianization_of_presentation() -> Abelianization {
    Presentation::hnn().abelianization()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PresentationReport {
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluates the four relators of `G` in reduced `G` arithmetic and the
/// relation family of `H` (for `0 <= k, n <= bound`) in `H` arithmetic.
pub fn check_presentation(bound: i64) -> PresentationReport {
    let mut checks: Vec<RelationCheck> = Presentation::hnn()
        .relators
        .into_iter()
        .map(|r| RelationCheck { passed: g_eval_word(&r.word).is_identity(), name: format!("G: {}", r.name) })
        .collect();
    for r in Presentation::lamplighter(bound).relators {
        let passed = h_eval_word(&r.word).is_ok_and(|h| h.is_identity());
        checks.push(RelationCheck { name: format!("H: {}", r.name), passed });
    }
    PresentationReport { checks }
}
