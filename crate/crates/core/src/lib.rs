//! Linear complexity analysis for binary sequences of period `2^n`.
//!
//! The crate computes exact linear complexity, k-error linear complexity and
//! critical-point spectra, and decomposes sequences into disjoint cubes whose
//! complexities are pairwise distinct. A small extension handles sequences of
//! period `p^n` over a prime field.
//!
//! Every fast evaluator has an independent oracle next to it:
//!
//! * [`sequence::linear_complexity`] (halving recursion) is checked against
//!   [`sequence::lc_oracle_gcd`] and [`sequence::lc_oracle_lfsr`].
//! * [`kerror::kerror_lc`] (cost-propagating halving) is checked against
//!   [`kerror::kerror_lc_bruteforce`].

pub mod cli;
pub mod cube;
mod error;
pub mod gf2poly;
pub mod kerror;
pub mod pary;
pub mod sequence;

pub use cube::{Cube, CubeDecomposition};
pub use error::{Error, Result};
pub use gf2poly::Gf2Poly;
pub use kerror::{CelcsProfile, ErrorPattern};
pub use pary::PrimePeriodicSequence;
pub use sequence::{LinearComplexityReport, PeriodicSequence};

/// 2-adic valuation of a nonzero integer.
#[inline]
pub(crate) fn two_adic_valuation(x: usize) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros()
}
