//! Exact computation, simulation and limit-law checks for the card guessing
//! game played on a deck that has been riffle shuffled exactly once.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`exact`] computes finite-`n` laws with arbitrary-precision rationals,
//! * [`sim`] samples riffle shuffles and plays the optimal guessing strategy,
//! * [`gf`] expands the closed-form bivariate generating functions as
//!   truncated power series and checks them against the recurrences,
//! * [`limits`] evaluates the limiting densities and Kolmogorov–Smirnov
//!   distances between finite laws and their limits.

pub mod error;
pub mod exact;
pub mod gf;
pub mod limits;
pub mod pmf;
pub mod poly;
pub mod sim;

pub use error::{Error, Result};
pub use exact::ExactEngine;
pub use pmf::Pmf;
pub use poly::RationalPoly;
