use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use super::atoms::integer_atom_mass;
use super::measure::{exact_multiplicity_with, quotient_multiplicity, Multiplicity, MultiplicityOptions};
use crate::error::{param, Result};
use crate::rep::{tree_operator, MAX_QUOTIENT, MAX_TREE_LEVEL, MIN_QUOTIENT};

/// Integer points where `A - lambda` is tested for a kernel.
pub const INTEGER_EIGENVALUES: [i64; 5] = [-4, -2, 0, 2, 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    /// Level-`n` action on the rooted binary tree, dimension `2^n`.
    Tree,
    /// Regular representation of the order `n 2^n` quotient.
    Quotient,
}

impl std::str::FromStr for RepKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(RepKind::Tree),
            "quotient" => Ok(RepKind::Quotient),
            other => Err(param(format!("unknown representation '{other}', expected tree or quotient"))),
        }
    }
}

impl std::fmt::Display for RepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RepKind::Tree => "tree",
            RepKind::Quotient => "quotient",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub level: u32,
    pub result: Multiplicity,
    /// `|fraction - target|`, exact.
    pub distance: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub kind: RepKind,
    pub lambda: i64,
    /// Mass of the limit measure at `lambda`.
    pub target: BigRational,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn last_distance(&self) -> Option<&BigRational> {
        self.rows.last().map(|r| &r.distance)
    }

    pub fn row(&self, level: u32) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.level == level)
    }
}

pub fn convergence_report(levels: &[u32], lambda: i64, kind: RepKind) -> Result<ConvergenceReport> {
    convergence_report_with(levels, lambda, kind, &MultiplicityOptions::default())
}

/// Kernel fraction of `A_n - lambda` per level against the limit mass. Rows are sorted by level.
pub fn convergence_report_with(
    levels: &[u32],
    lambda: i64,
    kind: RepKind,
    opts: &MultiplicityOptions,
) -> Result<ConvergenceReport> {
    if !INTEGER_EIGENVALUES.contains(&lambda) {
        return Err(param(format!("lambda must be one of {INTEGER_EIGENVALUES:?}, got {lambda}")));
    }
    if levels.is_empty() {
        return Err(param("no levels requested"));
    }
    let (lo, hi) = match kind {
        RepKind::Tree => (1, MAX_TREE_LEVEL),
        RepKind::Quotient => (MIN_QUOTIENT, MAX_QUOTIENT),
    };
    if let Some(bad) = levels.iter().find(|l| !(lo..=hi).contains(*l)) {
        return Err(param(format!("{kind} level {bad} outside {lo}..={hi}")));
    }
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();

    let target = integer_atom_mass(lambda);
    let rows = levels
        .par_iter()
        .map(|&level| {
            let result = match kind {
                RepKind::Tree => exact_multiplicity_with(&tree_operator(level)?, lambda, opts)?,
                RepKind::Quotient => quotient_multiplicity(level, lambda, opts)?,
            };
            let distance = (&result.fraction - &target).abs();
            Ok(ConvergenceRow { level, result, distance })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { kind, lambda, target, rows })
}
