use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{param, Result};

/// Default merge tolerance for numerically computed eigenvalues.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// One point of a counting measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurePoint {
    /// Cluster mean.
    pub value: f64,
    /// Set when the cluster mean lies within tolerance of an integer.
    pub exact: Option<i64>,
    pub multiplicity: usize,
    /// `multiplicity / dim`, exact.
    pub fraction: BigRational,
}

/// Normalized eigenvalue distribution of a finite operator, sorted by value.
#[derive(Clone, Debug, PartialEq)]
pub struct CountingMeasure {
    /// Tree level or quotient index the measure was computed at (0 when unspecified).
    pub level: usize,
    pub dim: usize,
    pub points: Vec<MeasurePoint>,
}

impl CountingMeasure {
    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    pub fn total_fraction(&self) -> BigRational {
        self.points.iter().fold(BigRational::zero(), |acc, p| acc + &p.fraction)
    }

    /// Multiplicity of the cluster snapped to the integer `lambda` (0 if absent).
    pub fn multiplicity_at(&self, lambda: i64) -> usize {
        self.points.iter().find(|p| p.exact == Some(lambda)).map_or(0, |p| p.multiplicity)
    }
}

/// Greedily merges consecutive sorted values lying within `tol` of each other.
pub fn cluster_eigenvalues(values: &[f64], tol: f64) -> Result<CountingMeasure> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(param(format!("cluster tolerance must be positive, got {tol}")));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(param("values must be sorted ascending"));
    }
    let dim = values.len();
    let mut points = Vec::new();
    let mut start = 0;
    for i in 1..=dim {
        if i < dim && values[i] - values[i - 1] <= tol {
            continue;
        }
        let chunk = &values[start..i];
        let mean = chunk.iter().sum::<f64>() / chunk.len() as f64;
        let rounded = mean.round();
        let exact = ((mean - rounded).abs() <= tol).then_some(rounded as i64);
        points.push(MeasurePoint {
            value: exact.map_or(mean, |e| e as f64),
            exact,
            multiplicity: chunk.len(),
            fraction: BigRational::new(BigInt::from(chunk.len()), BigInt::from(dim)),
        });
        start = i;
    }
    Ok(CountingMeasure { level: 0, dim, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_point_spectrum() {
        let m = cluster_eigenvalues(&[0.0, 4.0], 1e-8).unwrap();
        assert_eq!(m.points.len(), 2);
        assert_eq!((m.points[0].exact, m.points[0].multiplicity), (Some(0), 1));
        assert_eq!(m.points[0].fraction, q(1, 2));
        assert_eq!((m.points[1].exact, m.points[1].fraction.clone()), (Some(4), q(1, 2)));
    }

    #[test]
    fn triple_merges_to_one() {
        let m = cluster_eigenvalues(&[1.0, 1.0, 1.0], 1e-8).unwrap();
        assert_eq!(m.points.len(), 1);
        assert_eq!(m.points[0].multiplicity, 3);
        assert!(m.points[0].fraction.is_one());
    }

    #[test]
    fn merges_within_tolerance() {
        let m = cluster_eigenvalues(&[0.0, 1e-12, 2.0], 1e-8).unwrap();
        assert_eq!(m.points.len(), 2);
        assert_eq!(m.points[0].exact, Some(0));
        assert_eq!(m.points[0].fraction, q(2, 3));
        assert_eq!(m.points[1].fraction, q(1, 3));
        assert!(m.total_fraction().is_one());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cluster_eigenvalues(&[1.0, 0.0], 1e-8).is_err());
        assert!(cluster_eigenvalues(&[0.0], 0.0).is_err());
    }
}
