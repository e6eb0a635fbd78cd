//! Counting measures of the finite approximations, exact multiplicities at
//! integer eigenvalues, and the atomic limit measure.

mod atoms;
mod convergence;
mod measure;
mod theory;

pub use atoms::{atom_table, atom_weight, euler_phi, integer_atom_mass, total_atom_mass, Atom, AtomTable};
pub use convergence::{
    convergence_report, convergence_report_with, ConvergenceReport, ConvergenceRow, RepKind, INTEGER_EIGENVALUES,
};
pub use measure::{
    counting_measure, exact_multiplicity, exact_multiplicity_with, quotient_multiplicity, unexplained_eigenvalues,
    Multiplicity, MultiplicityOptions, BAREISS_CHECK_LIMIT, DEFAULT_PRIME_COUNT, DEFAULT_PRIME_SEED,
    DENSE_MEASURE_LIMIT,
};
pub use theory::{mass_tail_bound, mobius, ramanujan_sum, theoretical_moment, theoretical_projector, SeriesValue};
