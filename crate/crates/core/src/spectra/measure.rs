use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::linalg::{
    cluster_eigenvalues, rank_bareiss, rank_multi_prime, select_primes, sym_eigenvalues, CountingMeasure,
    MultiPrimeRank, SparseIntMatrix, DEFAULT_CLUSTER_TOL,
};
use crate::rep::QuotientRep;
use crate::ring::markov_a;

/// Largest dimension handled by the dense eigensolver.
pub const DENSE_MEASURE_LIMIT: usize = 4096;
/// Largest dimension at which exact multiplicities are re-derived by fraction-free elimination over `Z`.
pub const BAREISS_CHECK_LIMIT: usize = 256;
pub const DEFAULT_PRIME_SEED: u64 = 0x6c61_6d70;
pub const DEFAULT_PRIME_COUNT: usize = 3;

/// Dense eigendecomposition followed by clustering.
pub fn counting_measure(m: &SparseIntMatrix) -> Result<CountingMeasure> {
    if m.dim() > DENSE_MEASURE_LIMIT {
        return Err(Error::DimensionLimit {
            dim: m.dim(),
            limit: DENSE_MEASURE_LIMIT,
            alternative: "exact_multiplicity",
        });
    }
    let values = sym_eigenvalues(&m.to_dense_f64())?;
    cluster_eigenvalues(&values, DEFAULT_CLUSTER_TOL)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityOptions {
    pub prime_seed: u64,
    pub prime_count: usize,
    /// Cross-check against an integer rank when `dim <= bareiss_limit`.
    pub bareiss_limit: usize,
}

impl Default for MultiplicityOptions {
    fn default() -> Self {
        MultiplicityOptions {
            prime_seed: DEFAULT_PRIME_SEED,
            prime_count: DEFAULT_PRIME_COUNT,
            bareiss_limit: BAREISS_CHECK_LIMIT,
        }
    }
}

impl MultiplicityOptions {
    pub fn with_seed(seed: u64) -> Self {
        MultiplicityOptions { prime_seed: seed, ..Self::default() }
    }

    pub fn primes(&self) -> Vec<u64> {
        select_primes(self.prime_seed, self.prime_count)
    }
}

/// Dimension of the `lambda`-eigenspace of an integer matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplicity {
    pub lambda: i64,
    pub dim: usize,
    pub multiplicity: usize,
    pub fraction: BigRational,
    pub ranks: MultiPrimeRank,
    /// Rank over `Z` when it was computed.
    pub integer_rank: Option<usize>,
}

pub fn exact_multiplicity(m: &SparseIntMatrix, lambda: i64) -> Result<Multiplicity> {
    exact_multiplicity_with(m, lambda, &MultiplicityOptions::default())
}

pub fn exact_multiplicity_with(m: &SparseIntMatrix, lambda: i64, opts: &MultiplicityOptions) -> Result<Multiplicity> {
    if opts.prime_count == 0 {
        return Err(param("at least one prime is required"));
    }
    let shifted = m.shifted(lambda);
    let ranks = rank_multi_prime(&shifted, &opts.primes())?;
    let integer_rank = (m.dim() <= opts.bareiss_limit).then(|| rank_bareiss(&shifted.to_int_matrix()));
    if let Some(r) = integer_rank {
        if r != ranks.max_rank {
            return Err(Error::Invariant(format!(
                "rank over Z is {r} but the best modular rank is {}",
                ranks.max_rank
            )));
        }
    }
    let dim = m.dim();
    let multiplicity = dim - ranks.max_rank;
    Ok(Multiplicity {
        lambda,
        dim,
        multiplicity,
        fraction: BigRational::new(BigInt::from(multiplicity), BigInt::from(dim)),
        ranks,
        integer_rank,
    })
}

/// Multiplicity of `lambda` for `A` in the regular representation of the
/// quotient of order `n 2^n`, computed block by block over characters.
///
/// Every block is `n x n`, so each block rank is also taken over `Z`.
pub fn quotient_multiplicity(n: u32, lambda: i64, opts: &MultiplicityOptions) -> Result<Multiplicity> {
    let rep = QuotientRep::new(n)?;
    let blocks = rep.character_blocks(&markov_a())?;
    let primes = opts.primes();
    let block_ranks = blocks
        .par_iter()
        .map(|b| {
            let shifted = b.shifted(lambda);
            let modular = rank_multi_prime(&shifted, &primes)?;
            let exact = rank_bareiss(&shifted.to_int_matrix());
            if exact != modular.max_rank {
                return Err(Error::Invariant(format!(
                    "block rank over Z is {exact} but the best modular rank is {}",
                    modular.max_rank
                )));
            }
            Ok(modular)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut per_prime: Vec<(u64, usize)> = primes.iter().map(|&p| (p, 0)).collect();
    for r in &block_ranks {
        for (total, (_, rank)) in per_prime.iter_mut().zip(&r.per_prime) {
            total.1 += rank;
        }
    }
    let max_rank: usize = block_ranks.iter().map(|r| r.max_rank).sum();
    let dim = rep.order();
    let multiplicity = dim - max_rank;
    Ok(Multiplicity {
        lambda,
        dim,
        multiplicity,
        fraction: BigRational::new(BigInt::from(multiplicity), BigInt::from(dim)),
        ranks: MultiPrimeRank { per_prime, max_rank },
        integer_rank: Some(max_rank),
    })
}

/// Eigenvalues of a counting measure farther than `tol` from every
/// `4 cos(p pi / q)` with `0 <= p <= q <= q_bound`. Diagnostic only.
pub fn unexplained_eigenvalues(measure: &CountingMeasure, q_bound: u32, tol: f64) -> Vec<f64> {
    measure
        .points
        .iter()
        .map(|p| p.value)
        .filter(|&v| {
            let angle = (v / 4.0).clamp(-1.0, 1.0).acos() / std::f64::consts::PI;
            !(1..=q_bound).any(|q| {
                let p = (angle * q as f64).round();
                (4.0 * (p * std::f64::consts::PI / q as f64).cos() - v).abs() <= tol
            })
        })
        .collect()
}
