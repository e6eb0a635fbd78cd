//! Exact and numerical linear-algebra kernels.

mod bareiss;
mod cluster;
mod eigen;
mod matrix;
mod modp;
mod smith;

pub use bareiss::rank_bareiss;
pub use cluster::{cluster_eigenvalues, CountingMeasure, MeasurePoint, DEFAULT_CLUSTER_TOL};
pub use eigen::sym_eigenvalues;
pub use matrix::{IntMatrix, SparseIntMatrix};
pub use modp::{is_prime, rank_mod_p, rank_multi_prime, select_primes, MultiPrimeRank, MAX_MODULUS};
pub use smith::smith_normal_form;
