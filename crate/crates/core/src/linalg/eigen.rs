use nalgebra::DMatrix;

use crate::error::{param, Result};

/// All eigenvalues of a real symmetric matrix, ascending.
///
/// Symmetry is checked exactly: the callers assemble matrices from integers.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(param(format!("matrix is {}x{}, expected square", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)] != m[(j, i)] {
                return Err(param(format!("matrix is not symmetric at ({i},{j})")));
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 2.0, 2.0]);
        let v = sym_eigenvalues(&m).unwrap();
        assert!((v[0] - 0.0).abs() < 1e-12 && (v[1] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn identity_and_diagonal() {
        let v = sym_eigenvalues(&DMatrix::identity(2, 2)).unwrap();
        assert_eq!(v, vec![1.0, 1.0]);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, -4.0, 0.0]));
        let v = sym_eigenvalues(&d).unwrap();
        assert!(v.iter().zip([-4.0, 0.0, 4.0]).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(sym_eigenvalues(&m).is_err());
    }
}
