//! Rank over prime fields.
//!
//! Elimination runs in two phases. A sparse phase picks Markowitz-style
//! pivots (shortest row in the least populated column) while the active
//! submatrix stays sparse; once its density crosses a threshold the
//! remainder is moved into a dense buffer and finished by ordinary
//! Gaussian elimination with Barrett reduction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::SparseIntMatrix;
use crate::error::{param, Result};

/// Largest supported modulus (exclusive); products of two residues fit in 62 bits.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Active-submatrix density above which elimination switches to the dense kernel.
const DENSE_SWITCH_DENSITY: f64 = 0.08;

/// Sparse phase is skipped for matrices this small.
const DENSE_ONLY_DIM: usize = 64;

#[derive(Clone, Copy, Debug)]
struct Modulus {
    p: u64,
    barrett: u64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        Modulus { p, barrett: u64::MAX / p }
    }

    #[inline(always)]
    fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    fn residue(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes just below 2^31, chosen deterministically from `seed`.
pub fn select_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::with_capacity(count);
    while primes.len() < count {
        let mut candidate = (MAX_MODULUS - 1 - rng.gen_range(0..1u64 << 20)) | 1;
        while !is_prime(candidate) {
            candidate -= 2;
        }
        if !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    primes
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(param(format!("modulus {p} is not prime")));
    }
    if p >= MAX_MODULUS {
        return Err(param(format!("modulus {p} exceeds supported bound 2^31")));
    }
    let md = Modulus::new(p);
    let rows: Vec<Vec<(u32, u64)>> = m
        .sparse_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|(c, v)| (c as u32, md.residue(v))).filter(|&(_, v)| v != 0).collect())
        .collect();
    let mut elim = SparseElimination::new(rows, m.dim(), md);
    if m.dim() > DENSE_ONLY_DIM {
        elim.run_sparse_phase();
    }
    Ok(elim.rank + elim.dense_rank())
}

/// Per-prime ranks and the maximum, which is the best available lower bound
/// on (and generically equal to) the rank over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPrimeRank {
    pub per_prime: Vec<(u64, usize)>,
    pub max_rank: usize,
}

impl MultiPrimeRank {
    /// Largest pairwise disagreement between primes.
    pub fn spread(&self) -> usize {
        let lo = self.per_prime.iter().map(|r| r.1).min().unwrap_or(0);
        self.max_rank - lo
    }
}

pub fn rank_multi_prime(m: &SparseIntMatrix, primes: &[u64]) -> Result<MultiPrimeRank> {
    if primes.is_empty() {
        return Err(param("at least one prime is required"));
    }
    let per_prime = primes.iter().map(|&p| rank_mod_p(m, p).map(|r| (p, r))).collect::<Result<Vec<_>>>()?;
    let max_rank = per_prime.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(MultiPrimeRank { per_prime, max_rank })
}

struct SparseElimination {
    md: Modulus,
    rows: Vec<Vec<(u32, u64)>>,
    row_alive: Vec<bool>,
    // may hold stale row ids; `col_count` is exact
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    col_done: Vec<bool>,
    active_rows: usize,
    active_cols: usize,
    active_nnz: usize,
    rank: usize,
}

impl SparseElimination {
    fn new(rows: Vec<Vec<(u32, u64)>>, cols: usize, md: Modulus) -> Self {
        let mut col_rows = vec![Vec::new(); cols];
        let mut col_count = vec![0u32; cols];
        let mut active_nnz = 0;
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(r as u32);
                col_count[c as usize] += 1;
            }
            active_nnz += row.len();
        }
        let row_alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
        let active_rows = row_alive.iter().filter(|&&a| a).count();
        let col_done: Vec<bool> = col_count.iter().map(|&c| c == 0).collect();
        let active_cols = col_done.iter().filter(|&&d| !d).count();
        SparseElimination {
            md,
            rows,
            row_alive,
            col_rows,
            col_count,
            col_done,
            active_rows,
            active_cols,
            active_nnz,
            rank: 0,
        }
    }

    fn density(&self) -> f64 {
        if self.active_rows == 0 || self.active_cols == 0 {
            return 0.0;
        }
        self.active_nnz as f64 / (self.active_rows as f64 * self.active_cols as f64)
    }

    fn run_sparse_phase(&mut self) {
        while self.active_rows > 0 && self.density() < DENSE_SWITCH_DENSITY {
            let Some(col) = self.lightest_column() else { break };
            let pivot_row = self.shortest_row_in(col);
            self.eliminate(pivot_row, col);
        }
    }

    fn lightest_column(&mut self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..self.col_count.len() {
            if self.col_done[c] {
                continue;
            }
            if self.col_count[c] == 0 {
                self.col_done[c] = true;
                self.active_cols -= 1;
                continue;
            }
            if best.is_none_or(|b| self.col_count[c] < self.col_count[b]) {
                best = Some(c);
                if self.col_count[c] == 1 {
                    break;
                }
            }
        }
        best
    }

    fn contains(&self, r: usize, c: u32) -> Option<u64> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|i| row[i].1)
    }

    fn shortest_row_in(&mut self, col: usize) -> usize {
        let c = col as u32;
        let mut live: Vec<u32> = std::mem::take(&mut self.col_rows[col]);
        live.sort_unstable();
        live.dedup();
        live.retain(|&r| self.row_alive[r as usize] && self.contains(r as usize, c).is_some());
        let best = *live.iter().min_by_key(|&&r| (self.rows[r as usize].len(), r)).expect("column count is positive");
        self.col_rows[col] = live;
        best as usize
    }

    fn eliminate(&mut self, pivot_row: usize, col: usize) {
        let md = self.md;
        let c = col as u32;
        let pivot = std::mem::take(&mut self.rows[pivot_row]);
        let pivot_val = pivot[pivot.binary_search_by_key(&c, |e| e.0).unwrap()].1;
        let inv = md.inv(pivot_val);
        let targets: Vec<u32> = self.col_rows[col].iter().copied().filter(|&r| r as usize != pivot_row).collect();
        for r in targets {
            let r = r as usize;
            let Some(v) = self.contains(r, c) else { continue };
            let factor = md.p - md.mul(v, inv);
            let old = std::mem::take(&mut self.rows[r]);
            let old_len = old.len();
            let merged = self.axpy(old, &pivot, factor, r as u32);
            self.active_nnz = self.active_nnz + merged.len() - old_len;
            if merged.is_empty() {
                self.row_alive[r] = false;
                self.active_rows -= 1;
            }
            self.rows[r] = merged;
        }
        for &(pc, _) in &pivot {
            self.col_count[pc as usize] -= 1;
        }
        self.active_nnz -= pivot.len();
        self.row_alive[pivot_row] = false;
        self.active_rows -= 1;
        self.col_done[col] = true;
        self.active_cols -= 1;
        self.col_rows[col].clear();
        self.rank += 1;
    }

    /// `row + factor * pivot`, maintaining column bookkeeping for row id `rid`.
    fn axpy(&mut self, row: Vec<(u32, u64)>, pivot: &[(u32, u64)], factor: u64, rid: u32) -> Vec<(u32, u64)> {
        let md = self.md;
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
            let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
            if take_row {
                out.push(row[i]);
                i += 1;
            } else if take_piv {
                let (pc, pv) = pivot[j];
                out.push((pc, md.mul(factor, pv)));
                self.col_count[pc as usize] += 1;
                self.col_rows[pc as usize].push(rid);
                j += 1;
            } else {
                let (cc, rv) = row[i];
                let v = md.reduce(rv + md.mul(factor, pivot[j].1));
                if v == 0 {
                    self.col_count[cc as usize] -= 1;
                } else {
                    out.push((cc, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Finishes the active submatrix with dense elimination and returns its rank.
    fn dense_rank(&mut self) -> usize {
        let mut col_index = vec![u32::MAX; self.col_count.len()];
        let mut ncols = 0;
        for (c, slot) in col_index.iter_mut().enumerate() {
            if !self.col_done[c] && self.col_count[c] > 0 {
                *slot = ncols;
                ncols += 1;
            }
        }
        let ncols = ncols as usize;
        if ncols == 0 {
            return 0;
        }
        let mut dense: Vec<Vec<u64>> = Vec::with_capacity(self.active_rows);
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_alive[r] || row.is_empty() {
                continue;
            }
            let mut d = vec![0u64; ncols];
            for &(c, v) in row {
                d[col_index[c as usize] as usize] = v;
            }
            dense.push(d);
        }
        dense_rank_mod(&mut dense, ncols, self.md)
    }
}

fn dense_rank_mod(rows: &mut [Vec<u64>], ncols: usize, md: Modulus) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let inv = md.inv(pivot[c]);
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = md.p - md.mul(row[c], inv);
            row[c] = 0;
            for (x, &y) in row[c + 1..].iter_mut().zip(&pivot[c + 1..]) {
                *x = md.reduce(*x + factor * y);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 101;

    #[test]
    fn primality() {
        assert!(is_prime(2147483647));
        assert!(!is_prime(2147483649));
        assert!(is_prime(101));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
    }

    #[test]
    fn selected_primes_are_distinct_and_reproducible() {
        let a = select_primes(7, 3);
        assert_eq!(a, select_primes(7, 3));
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|&p| is_prime(p) && p < MAX_MODULUS && p > 1 << 30));
        assert!(a[0] != a[1] && a[1] != a[2] && a[0] != a[2]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = SparseIntMatrix::zero(5).unwrap();
        assert_eq!(rank_mod_p(&m, P).unwrap(), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = SparseIntMatrix::from_triplets(2, [(0, 0, 2), (0, 1, 2), (1, 0, 2), (1, 1, 2)]).unwrap();
        assert_eq!(rank_mod_p(&m, P).unwrap(), 1);
        let a1_minus_4 = SparseIntMatrix::from_triplets(2, [(0, 0, -2), (0, 1, 2), (1, 0, 2), (1, 1, -2)]).unwrap();
        assert_eq!(rank_mod_p(&a1_minus_4, P).unwrap(), 1);
    }

    #[test]
    fn rejects_composite_modulus() {
        let m = SparseIntMatrix::identity(2).unwrap();
        assert!(matches!(rank_mod_p(&m, 100), Err(crate::Error::Parameter(_))));
        assert!(rank_mod_p(&m, 4294967311).is_err());
    }

    #[test]
    fn characteristic_matters() {
        // det = 3, singular mod 3 only
        let m = SparseIntMatrix::from_triplets(2, [(0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 2)]).unwrap();
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 2);
        let report = rank_multi_prime(&m, &[3, 5, 7]).unwrap();
        assert_eq!(report.max_rank, 2);
        assert_eq!(report.spread(), 1);
    }

    #[test]
    fn sparse_phase_on_large_path_laplacian() {
        // path graph Laplacian of size n has rank n - 1
        let n = 500;
        let mut t = Vec::new();
        for i in 0..n {
            let deg = if i == 0 || i == n - 1 { 1 } else { 2 };
            t.push((i, i, deg));
            if i + 1 < n {
                t.push((i, i + 1, -1));
                t.push((i + 1, i, -1));
            }
        }
        let m = SparseIntMatrix::from_triplets(n, t).unwrap();
        assert_eq!(rank_mod_p(&m, 2147483647).unwrap(), n - 1);
    }
}
