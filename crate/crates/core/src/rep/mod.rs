//! Finite permutation representations of `H` and operator assembly.

mod poly;
mod quotient;
mod tree;

pub use quotient::{QuotientRep, MAX_QUOTIENT, MIN_QUOTIENT};
pub use tree::{format_bitword, parse_bitword, tree_action, LevelRep, MAX_TREE_LEVEL};

use crate::error::Result;
use crate::group::HElement;
use crate::linalg::SparseIntMatrix;
use crate::ring::RingElement;

/// A finite set with a left action of `H`.
pub trait Representation {
    fn dim(&self) -> usize;
    /// Image of `state` under `g`.
    fn act(&self, g: &HElement, state: usize) -> usize;
    /// Tree level or cycle length; used to tag outputs.
    fn label(&self) -> usize;
}

/// `sum_g c_g P_g`, with `P_g` the permutation matrix sending basis vector `x` to `g x`.
///
/// Coefficients must be integers. The result is symmetric when `x` is
/// invariant under the involution.
pub fn assemble_operator<R: Representation + ?Sized>(rep: &R, x: &RingElement) -> Result<SparseIntMatrix> {
    let terms = quotient::integral_terms(x)?;
    let dim = rep.dim();
    let mut triplets = Vec::with_capacity(dim * terms.len());
    for (g, c) in &terms {
        for state in 0..dim {
            triplets.push((rep.act(g, state), state, *c));
        }
    }
    SparseIntMatrix::from_triplets(dim, triplets)
}

/// Level-`n` approximation `A_n` of the Markov-type operator on the tree.
pub fn tree_operator(n: u32) -> Result<SparseIntMatrix> {
    assemble_operator(&LevelRep::new(n)?, &crate::ring::markov_a())
}
