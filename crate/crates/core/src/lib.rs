//! Exact counting of connected Wick contractions in the zero-dimensional
//! many-body theory, and exact-rational asymptotic expansions of those counts.
//!
//! Counts are available through three independent routes that are meant to be
//! checked against one another:
//!
//! - [`counts::connected_explicit`]: closed composition-indexed formulas for `N <= 5`,
//! - [`counts::connected_general`]: logarithm of the truncated bivariate generating function,
//! - [`oracle::brute_force_connected`]: exhaustive enumeration of slot bijections.
//!
//! [`asymptotics`] expands the composition formulas around `m = infinity` and
//! produces the principal and n-nomial centered correction series as exact
//! fractions.

pub mod asymptotics;
pub mod counts;
mod error;
pub mod exact;
pub mod oracle;
pub mod reference;
pub mod series;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRat};
