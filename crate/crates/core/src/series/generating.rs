use num_traits::Zero;

use super::{BivariateTruncatedSeries, TruncatedSeries};
use crate::exact::{factorial, int_rat, to_integer, total_contractions, ExactInt, ExactRat};
use crate::{Error, Result};

/// `g(y) = sum_m D_m y^m / m!` with `D_m = (2m)!`, through `y^order`.
pub fn vacuum_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |m| {
        int_rat(total_contractions(m as u64, 0) / factorial(m as u64))
    })
}

/// `Z(x, y)`: coefficient of `x^N y^m` is `(2m+N)! / (N! N! m!)`.
pub fn build_z(x_order: usize, y_order: usize) -> BivariateTruncatedSeries {
    BivariateTruncatedSeries::from_fn(x_order, y_order, |n, m| {
        let nf = factorial(n as u64);
        ExactRat::new(
            total_contractions(m as u64, n as u64),
            &nf * &nf * factorial(m as u64),
        )
    })
}

/// Connected counts extracted from `W = log Z`.
///
/// Row `N = 0` holds the connected vacuum counts `m! [y^m] log g`; rows
/// `N >= 1` hold `N! m! [x^N y^m] log(1 + S)` where `Z = g (1 + S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedTable {
    x_order: usize,
    y_order: usize,
    values: Vec<Vec<ExactInt>>,
}

impl ConnectedTable {
    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn y_order(&self) -> usize {
        self.y_order
    }

    /// Count for `N` external pairs at order `m`; errors when the table was
    /// built with smaller truncation orders.
    pub fn get(&self, legs: usize, m: usize) -> Result<ExactInt> {
        if legs > self.x_order || m > self.y_order {
            return Err(Error::TruncationTooSmall {
                need_x: legs,
                need_y: m,
                have_x: self.x_order,
                have_y: self.y_order,
            });
        }
        Ok(self.values[legs][m].clone())
    }
}

/// Builds `W = log Z` by factoring `Z = g(y) (1 + S(x, y))` and returns the
/// connected counts through `x^x_order`, `y^y_order`.
///
/// Every extracted value must be an integer; a fractional value is reported
/// as [`Error::NonInteger`].
pub fn connected_from_log(x_order: usize, y_order: usize) -> Result<ConnectedTable> {
    let z = build_z(x_order, y_order);
    let g = z.row(0).clone();
    let g_inv = g.inverse()?;
    let mut rows = vec![TruncatedSeries::zero(y_order)];
    for n in 1..=x_order {
        rows.push(z.row(n).mul(&g_inv)?);
    }
    let s = BivariateTruncatedSeries::from_rows(rows)?;
    let log_s = s.log_one_plus_nilpotent()?;
    let log_g = g.log()?;

    let mut values = Vec::with_capacity(x_order + 1);
    for n in 0..=x_order {
        let row = if n == 0 { &log_g } else { log_s.row(n) };
        let mut out = Vec::with_capacity(y_order + 1);
        for m in 0..=y_order {
            let scaled = row.coeff(m) * int_rat(factorial(n as u64) * factorial(m as u64));
            let v = to_integer(&scaled)?;
            if v < ExactInt::zero() {
                return Err(Error::InvalidArgument(format!(
                    "negative connected count {v} at N = {n}, m = {m}"
                )));
            }
            out.push(v);
        }
        values.push(out);
    }
    // log g has no constant term; the empty vacuum diagram counts as one
    values[0][0] = ExactInt::from(1);
    Ok(ConnectedTable {
        x_order,
        y_order,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{h_inverse_coeff, rat, HInverseMethod};

    #[test]
    fn z_coefficients() {
        let z = build_z(2, 2);
        assert_eq!(z.coeff(0, 2), rat(12, 1));
        assert_eq!(z.coeff(1, 1), rat(6, 1));
        assert_eq!(z.coeff(2, 0), rat(1, 2));
    }

    #[test]
    fn reciprocal_of_g() {
        for order in 4..=16 {
            let g = vacuum_series(order);
            let h = TruncatedSeries::from_fn(order, |m| {
                int_rat(h_inverse_coeff(m as u32, HInverseMethod::Recurrence))
            });
            assert_eq!(g.mul(&h).unwrap(), TruncatedSeries::one(order), "order {order}");
        }
    }

    #[test]
    fn exp_log_round_trip_of_g() {
        let g = vacuum_series(8);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn connected_examples() {
        let t = connected_from_log(2, 3).unwrap();
        assert_eq!(t.get(1, 1).unwrap(), ExactInt::from(4));
        assert_eq!(t.get(2, 0).unwrap(), ExactInt::from(0));
        assert_eq!(t.get(2, 1).unwrap(), ExactInt::from(2));
        assert_eq!(t.get(0, 1).unwrap(), ExactInt::from(2));
        assert_eq!(t.get(0, 2).unwrap(), ExactInt::from(20));
        assert!(matches!(t.get(3, 1), Err(Error::TruncationTooSmall { .. })));
        assert!(matches!(t.get(1, 4), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn zero_shelf() {
        let t = connected_from_log(6, 8).unwrap();
        for n in 1..=6usize {
            for m in 0..n.saturating_sub(1) {
                assert!(t.get(n, m).unwrap().is_zero(), "N = {n}, m = {m}");
            }
            assert!(!t.get(n, n - 1).unwrap().is_zero());
        }
    }
}
