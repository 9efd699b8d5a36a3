use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::ExactRat;
use crate::{Error, Result};

/// A power series in `y` known through `y^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRat>,
}

impl TruncatedSeries {
    /// Builds a series from leading coefficients, padding with zeros or
    /// dropping terms past `order`.
    pub fn new(mut coeffs: Vec<ExactRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRat::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> ExactRat) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![ExactRat::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut out = vec![ExactRat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ConstantTerm {
                operation: "inverse",
                expected: "nonzero",
            });
        }
        let inv0 = a0.recip();
        let n = self.coeffs.len();
        let mut out: Vec<ExactRat> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut s = ExactRat::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Formal derivative, keeping the same order (top coefficient becomes 0).
    fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![ExactRat::zero(); n];
        for k in 1..n {
            out[k - 1] = &self.coeffs[k] * BigInt::from(k);
        }
        TruncatedSeries { coeffs: out }
    }

    /// Formal logarithm; needs constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                operation: "log",
                expected: "1",
            });
        }
        // (log a)' = a'/a
        let q = self.derivative().mul(&self.inverse()?)?;
        let n = self.coeffs.len();
        let mut out = vec![ExactRat::zero()];
        out.extend((1..n).map(|k| &q.coeffs[k - 1] / BigInt::from(k)));
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Formal exponential; needs constant term exactly 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                operation: "exp",
                expected: "0",
            });
        }
        // e' = a' e  =>  k e_k = sum_{j=1}^k j a_j e_{k-j}
        let n = self.coeffs.len();
        let mut out: Vec<ExactRat> = Vec::with_capacity(n);
        out.push(ExactRat::one());
        for k in 1..n {
            let mut s = ExactRat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j] * BigInt::from(j);
                }
            }
            out.push(s / BigInt::from(k));
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(y^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exact::rat;

    fn s(v: &[(i64, i64)], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&(p, q)| rat(p, q)).collect(), order)
    }

    #[test]
    fn products() {
        let a = s(&[(1, 1), (1, 1)], 2);
        let b = s(&[(1, 1), (-1, 1)], 2);
        assert_eq!(a.mul(&b).unwrap(), s(&[(1, 1), (0, 1), (-1, 1)], 2));
        let c = s(&[(1, 1), (2, 1)], 3);
        assert_eq!(c.mul(&TruncatedSeries::one(3)).unwrap(), c);
        assert!(matches!(a.mul(&c), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn log_of_one_plus_y() {
        let a = s(&[(1, 1), (1, 1)], 3);
        assert_eq!(a.log().unwrap(), s(&[(0, 1), (1, 1), (-1, 2), (1, 3)], 3));
    }

    #[test]
    fn constant_term_guards() {
        let a = s(&[(2, 1), (1, 1)], 3);
        assert!(matches!(a.log(), Err(Error::ConstantTerm { .. })));
        assert!(matches!(a.exp(), Err(Error::ConstantTerm { .. })));
        assert!(TruncatedSeries::zero(3).inverse().is_err());
    }

    fn arb_unit_series() -> impl Strategy<Value = TruncatedSeries> {
        (1usize..8).prop_flat_map(|order| {
            prop::collection::vec((-20i64..20, 1i64..6), order).prop_map(move |v| {
                let mut c = vec![rat(1, 1)];
                c.extend(v.into_iter().map(|(p, q)| rat(p, q)));
                TruncatedSeries::new(c, order)
            })
        })
    }

    proptest! {
        #[test]
        fn exp_inverts_log(a in arb_unit_series()) {
            prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
        }

        #[test]
        fn inverse_is_inverse(a in arb_unit_series()) {
            let one = TruncatedSeries::one(a.order());
            prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), one);
        }
    }
}
