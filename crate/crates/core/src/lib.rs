//! Exact arithmetic for the lamplighter group `H = Z/2 wr Z`, its ascending
//! HNN extension `G`, the operator `A = t + at + t^-1 + (at)^-1` in `Q[H]`,
//! finite approximations of `A`, and the L2-Betti bookkeeping that turns the
//! kernel dimension `1/3` into a value outside the dyadic rationals.

pub mod bookkeeping;
pub mod checks;
pub mod error;
pub mod group;
pub mod linalg;
pub mod rep;
pub mod report;
pub mod ring;
pub mod spectra;

pub use error::{Error, Result};
