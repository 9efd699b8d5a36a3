//! Truncated Laurent series in `t = 1/m` with explicit precision.
//!
//! A series stores the coefficients of `t^val .. t^(prec-1)`; everything at
//! or beyond `t^prec` is unknown. Products and sums propagate the precision
//! that is actually known, so cancellation between large terms can be
//! detected instead of silently producing wrong low-order coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::ExactRat;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<ExactRat>,
}

impl LaurentSeries {
    /// Coefficients of `t^val, t^(val+1), ...`; the precision is `val + coeffs.len()`.
    pub fn new(val: i64, coeffs: Vec<ExactRat>) -> Self {
        LaurentSeries { val, coeffs }
    }

    /// The zero series known up to (excluding) `t^prec`.
    pub fn zero(prec: i64) -> Self {
        LaurentSeries { val: prec, coeffs: Vec::new() }
    }

    pub fn constant(c: ExactRat, prec: i64) -> Self {
        if prec <= 0 {
            return Self::zero(prec);
        }
        let mut coeffs = vec![ExactRat::zero(); prec as usize];
        coeffs[0] = c;
        LaurentSeries { val: 0, coeffs }
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(ExactRat::one(), prec)
    }

    /// `a*m + b`, exact; the precision is `prec`.
    pub fn affine(a: &ExactRat, b: &ExactRat, prec: i64) -> Self {
        if a.is_zero() {
            return Self::constant(b.clone(), prec);
        }
        let len = (prec + 1).max(0) as usize;
        let mut coeffs = vec![ExactRat::zero(); len];
        if len > 0 {
            coeffs[0] = a.clone();
        }
        if len > 1 {
            coeffs[1] = b.clone();
        }
        LaurentSeries { val: -1, coeffs }
    }

    /// A power series in `t` as a Laurent series with valuation 0.
    pub fn from_power_series(s: &TruncatedSeries) -> Self {
        LaurentSeries { val: 0, coeffs: s.coeffs().to_vec() }
    }

    /// Lowest stored exponent (not necessarily a nonzero coefficient).
    pub fn val(&self) -> i64 {
        self.val
    }

    /// First unknown exponent.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeff(&self, e: i64) -> ExactRat {
        if e < self.val || e >= self.precision() {
            return ExactRat::zero();
        }
        self.coeffs[(e - self.val) as usize].clone()
    }

    /// Whether every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops leading zero coefficients so `val` is the true valuation.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        self
    }

    /// Forgets coefficients at and beyond `t^prec`.
    pub fn truncated(mut self, prec: i64) -> Self {
        if prec < self.precision() {
            let keep = (prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
            if keep == 0 {
                self.val = prec;
            }
        }
        self
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision());
        }
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { val: self.val + k, coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let val = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let coeffs = (val..prec).map(|e| self.coeff(e) + other.coeff(e)).collect();
        LaurentSeries { val, coeffs }
    }

    /// In-place `self += other`, keeping the smaller precision.
    pub fn add_assign(&mut self, other: &Self) {
        if other.val >= self.val && other.precision() >= self.precision() {
            let base = (other.val - self.val) as usize;
            for (i, c) in other.coeffs.iter().enumerate() {
                match self.coeffs.get_mut(base + i) {
                    Some(slot) => *slot += c,
                    None => break,
                }
            }
        } else {
            *self = self.add(other);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        let val = a.val + b.val;
        let prec = (a.val + b.precision()).min(b.val + a.precision());
        let len = (prec - val).max(0) as usize;
        let mut coeffs = vec![ExactRat::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        if len == 0 {
            return Self::zero(prec);
        }
        LaurentSeries { val, coeffs }
    }

    /// Multiplicative inverse; the leading known coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.clone().normalized();
        if a.coeffs.is_empty() {
            return Err(Error::ConstantTerm {
                operation: "inverse",
                expected: "a nonzero known coefficient",
            });
        }
        let len = a.coeffs.len();
        let a0 = a.coeffs[0].clone();
        let mut r = vec![ExactRat::zero(); len];
        r[0] = a0.recip();
        for k in 1..len {
            let mut acc = ExactRat::zero();
            for j in 1..=k {
                if !a.coeffs[j].is_zero() {
                    acc += &a.coeffs[j] * &r[k - j];
                }
            }
            r[k] = -acc / &a0;
        }
        Ok(LaurentSeries { val: -a.val, coeffs: r })
    }

    /// Evaluates the known terms at `m` (`t = 1/m`).
    pub fn eval_at(&self, m: &ExactRat) -> ExactRat {
        let t = m.recip();
        let mut acc = ExactRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        let e = self.val;
        let scale = if e >= 0 {
            num_traits::pow(t, e as usize)
        } else {
            num_traits::pow(m.clone(), (-e) as usize)
        };
        acc * scale
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}
