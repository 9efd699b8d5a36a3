use num_traits::Zero;

use super::TruncatedSeries;
use crate::exact::ExactRat;
use crate::{Error, Result};

/// Power series in `x` and `y`, truncated at `x^x_order` and `y^y_order`.
/// Row `N` holds the coefficient series of `x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateTruncatedSeries {
    rows: Vec<TruncatedSeries>,
    y_order: usize,
}

impl BivariateTruncatedSeries {
    pub fn zero(x_order: usize, y_order: usize) -> Self {
        BivariateTruncatedSeries {
            rows: vec![TruncatedSeries::zero(y_order); x_order + 1],
            y_order,
        }
    }

    pub fn from_fn(x_order: usize, y_order: usize, mut f: impl FnMut(usize, usize) -> ExactRat) -> Self {
        BivariateTruncatedSeries {
            rows: (0..=x_order)
                .map(|n| TruncatedSeries::from_fn(y_order, |m| f(n, m)))
                .collect(),
            y_order,
        }
    }

    pub fn from_rows(rows: Vec<TruncatedSeries>) -> Result<Self> {
        let y_order = rows.first().map(TruncatedSeries::order).ok_or_else(|| {
            Error::InvalidArgument("bivariate series needs at least one row".into())
        })?;
        if let Some(bad) = rows.iter().find(|r| r.order() != y_order) {
            return Err(Error::OrderMismatch {
                left: y_order,
                right: bad.order(),
            });
        }
        Ok(BivariateTruncatedSeries { rows, y_order })
    }

    pub fn x_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn y_order(&self) -> usize {
        self.y_order
    }

    pub fn row(&self, n: usize) -> &TruncatedSeries {
        &self.rows[n]
    }

    pub fn coeff(&self, n: usize, m: usize) -> ExactRat {
        self.rows
            .get(n)
            .map(|r| r.coeff(m))
            .unwrap_or_else(ExactRat::zero)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.x_order() != other.x_order() {
            return Err(Error::OrderMismatch {
                left: self.x_order(),
                right: other.x_order(),
            });
        }
        if self.y_order != other.y_order {
            return Err(Error::OrderMismatch {
                left: self.y_order,
                right: other.y_order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(BivariateTruncatedSeries {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect(),
            y_order: self.y_order,
        })
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        BivariateTruncatedSeries {
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
            y_order: self.y_order,
        }
    }

    /// Product truncated in both variables.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let nx = self.rows.len();
        let mut rows = vec![TruncatedSeries::zero(self.y_order); nx];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows[..nx - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                rows[i + j] = &rows[i + j] + &a.mul(b)?;
            }
        }
        Ok(BivariateTruncatedSeries {
            rows,
            y_order: self.y_order,
        })
    }

    /// `log(1 + s)` for a series with no `x^0` row. The expansion stops after
    /// `x_order` powers because `s^k` starts at `x^k`.
    pub fn log_one_plus_nilpotent(&self) -> Result<Self> {
        if !self.rows[0].is_zero() {
            return Err(Error::ConstantTerm {
                operation: "log(1 + s) with s nilpotent in x",
                expected: "0 in every y power of the x^0 row",
            });
        }
        let mut out = Self::zero(self.x_order(), self.y_order);
        let mut power = self.clone();
        for k in 1..=self.x_order() {
            let c = ExactRat::new(crate::exact::sign_pow(k + 1).into(), (k as i64).into());
            out = out.add(&power.scale(&c))?;
            power = power.mul(self)?;
        }
        Ok(out)
    }
}
