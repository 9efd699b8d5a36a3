//! Truncated formal power series over exact rationals and the generating
//! functions of the theory: `g(y)`, `Z(x, y)` and `W(x, y) = log Z(x, y)`.

mod bivariate;
mod generating;
mod truncated;

pub use bivariate::BivariateTruncatedSeries;
pub use generating::{build_z, connected_from_log, vacuum_series, ConnectedTable};
pub use truncated::TruncatedSeries;
