use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;

use crate::error::{param, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(param(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        Ok(IntMatrix { rows, cols, data: vec![BigInt::from(0); rows * cols] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m[(i, i)] = BigInt::from(1);
        }
        Ok(m)
    }

    /// Builds a matrix from rows of machine integers; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(param(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Square sparse integer matrix with coalesced, nonzero, row-major sorted entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    dim: usize,
    entries: Vec<(usize, usize, i64)>,
    symmetric: bool,
}

impl SparseIntMatrix {
    /// Coalesces duplicate coordinates by summation and drops zeros.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        if dim == 0 {
            return Err(param("sparse matrix dimension must be positive"));
        }
        let mut raw: Vec<(usize, usize, i64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(param(format!("entry ({r},{c}) outside {dim}x{dim}")));
            }
            raw.push((r, c, v));
        }
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        let symmetric = check_symmetric(&entries);
        Ok(SparseIntMatrix { dim, entries, symmetric })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, 1)))
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, std::iter::empty())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.binary_search_by_key(&(r, c), |&(a, b, _)| (a, b)).map_or(0, |i| self.entries[i].2)
    }

    /// Returns `self - lambda * I`.
    pub fn shifted(&self, lambda: i64) -> SparseIntMatrix {
        let diag = (0..self.dim).map(|i| (i, i, -lambda));
        Self::from_triplets(self.dim, self.entries.iter().copied().chain(diag))
            .expect("shift keeps coordinates in range")
    }

    pub fn trace(&self) -> i64 {
        self.entries.iter().filter(|e| e.0 == e.1).map(|e| e.2).sum()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.dim];
        for &(r, _, v) in &self.entries {
            sums[r] += v;
        }
        sums
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.dim];
        for &(_, c, v) in &self.entries {
            sums[c] += v;
        }
        sums
    }

    /// Rows as sorted `(col, value)` lists.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.dim];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] = v as f64;
        }
        m
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.dim, self.dim).expect("dim is positive");
        for &(r, c, v) in &self.entries {
            m[(r, c)] = BigInt::from(v);
        }
        m
    }

    /// Coordinate text export: a `dim` header line, then `row col value` lines in row-major order.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.entries.len() + 1));
        out.push_str(&format!("{}\n", self.dim));
        for &(r, c, v) in &self.entries {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }

    pub fn from_coordinate_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| param("empty coordinate text"))?;
        let dim: usize = header.trim().parse().map_err(|_| param(format!("bad dimension line {header:?}")))?;
        let mut triplets = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || param(format!("bad entry line {line:?}"));
            if fields.len() != 3 {
                return Err(bad());
            }
            let r = fields[0].parse().map_err(|_| bad())?;
            let c = fields[1].parse().map_err(|_| bad())?;
            let v = fields[2].parse().map_err(|_| bad())?;
            triplets.push((r, c, v));
        }
        Self::from_triplets(dim, triplets)
    }
}

fn check_symmetric(entries: &[(usize, usize, i64)]) -> bool {
    entries.iter().all(|&(r, c, v)| {
        r == c || entries.binary_search_by_key(&(c, r), |&(a, b, _)| (a, b)).is_ok_and(|i| entries[i].2 == v)
    })
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coordinate_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coalesces_and_drops_zeros() {
        let m = SparseIntMatrix::from_triplets(2, [(0, 0, 1), (0, 0, 2), (1, 0, 3), (1, 0, -3)]).unwrap();
        assert_eq!(m.entries(), &[(0, 0, 3)]);
        assert!(m.is_symmetric());
    }

    #[test]
    fn detects_asymmetry() {
        let m = SparseIntMatrix::from_triplets(2, [(0, 1, 1)]).unwrap();
        assert!(!m.is_symmetric());
    }

    #[test]
    fn coordinate_text_roundtrip() {
        let m = SparseIntMatrix::from_triplets(3, [(2, 1, -4), (0, 0, 7), (1, 2, -4)]).unwrap();
        let text = m.to_coordinate_text();
        assert_eq!(text, "3\n0 0 7\n1 2 -4\n2 1 -4\n");
        assert_eq!(SparseIntMatrix::from_coordinate_text(&text).unwrap(), m);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SparseIntMatrix::from_triplets(2, [(2, 0, 1)]).is_err());
        assert!(IntMatrix::zeros(0, 3).is_err());
    }
}
