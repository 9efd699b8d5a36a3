//! Closed-form prefactors of asymptotic contributions.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::exact::{factorial, int_rat, ExactRat, Polynomial};

/// The linear factor `a*m + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub a: ExactRat,
    pub b: ExactRat,
}

impl LinearFactor {
    pub fn new(a: ExactRat, b: ExactRat) -> Self {
        LinearFactor { a, b }
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::linear(self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_one(), self.b.is_zero()) {
            (true, true) => f.write_str("m"),
            (_, true) => write!(f, "{}m", self.a),
            (true, false) => write!(f, "(m{:+})", self.b),
            (false, false) => write!(f, "({}m{:+})", self.a, self.b),
        }
    }
}

/// `sign * scalar * sqrt(radicand) * [(2m)!] * base^(-m) * m^m_power * prod(a*m + b)`.
///
/// `scalar` is positive and `radicand` is a square-free positive integer
/// (1 when there is no irrational part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticPrefactor {
    pub sign: i8,
    pub scalar: ExactRat,
    pub radicand: ExactRat,
    pub base: ExactRat,
    pub factorial: bool,
    pub factors: Vec<LinearFactor>,
    pub m_power: i64,
}

/// Writes `sqrt(q)` as `c * sqrt(r)` with `c` rational and `r` a square-free integer.
pub fn sqrt_normal_form(q: &ExactRat) -> (ExactRat, ExactRat) {
    assert!(q.is_positive(), "square root of a non-positive number");
    // sqrt(p/d) = sqrt(p*d)/d
    let d = q.denom().clone();
    let mut rest = (q.numer() * &d).magnitude().clone();
    let mut outside = BigUint::one();
    let mut f = BigUint::from(2u32);
    while &f * &f <= rest {
        let sq = &f * &f;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            outside *= &f;
        }
        f += 1u32;
    }
    let c = ExactRat::new(BigInt::from_biguint(Sign::Plus, outside), d);
    (c, int_rat(BigInt::from_biguint(Sign::Plus, rest)))
}

impl AsymptoticPrefactor {
    /// The trivial prefactor 1.
    pub fn unit() -> Self {
        AsymptoticPrefactor {
            sign: 1,
            scalar: ExactRat::one(),
            radicand: ExactRat::one(),
            base: ExactRat::one(),
            factorial: false,
            factors: Vec::new(),
            m_power: 0,
        }
    }

    /// Product of the linear factors as a polynomial in `m`.
    pub fn polynomial(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::from_ints(&[1]), |acc, f| acc.mul(&f.polynomial()))
    }

    /// Multiplies by a signed rational.
    pub fn scaled(mut self, c: &ExactRat) -> Self {
        assert!(!c.is_zero(), "prefactor scaled by zero");
        if c.is_negative() {
            self.sign = -self.sign;
        }
        self.scalar *= c.abs();
        self
    }

    /// Multiplies the irrational parts, renormalizing the square root.
    pub fn times_sqrt(mut self, scalar: &ExactRat, radicand: &ExactRat) -> Self {
        let (c, r) = sqrt_normal_form(&(&self.radicand * radicand));
        self.scalar *= scalar * c;
        self.radicand = r;
        self
    }

    /// Whether both prefactors describe the same function of `m`, whatever
    /// way the constant is split between `scalar`, `radicand` and the factors.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.sign != other.sign || self.base != other.base || self.factorial != other.factorial {
            return false;
        }
        // compare (scalar^2 * radicand * poly^2) * m^(2 m_power) after clearing negative powers
        let low = self.m_power.min(other.m_power);
        let squared = |p: &Self| {
            let c = &p.scalar * &p.scalar * &p.radicand;
            let poly = p.polynomial();
            let mut q = poly.mul(&poly).scale(&c);
            for _ in 0..2 * (p.m_power - low) {
                q = q.mul(&Polynomial::from_ints(&[0, 1]));
            }
            q
        };
        squared(self) == squared(other)
    }

    /// Exact value without the square root: `sign * scalar * (2m)! * base^(-m) * m^m_power * prod`.
    pub fn rational_part(&self, m: u64) -> ExactRat {
        let mm = int_rat(BigInt::from(m));
        let mut v = self.scalar.clone();
        if self.sign < 0 {
            v = -v;
        }
        if self.factorial {
            v *= int_rat(factorial(2 * m));
        }
        let e = i32::try_from(m).expect("order fits in i32");
        v *= self.base.pow(-e);
        v *= mm.pow(i32::try_from(self.m_power).expect("small power"));
        v * self.polynomial().eval(&mm)
    }
}

impl fmt::Display for AsymptoticPrefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(self.scalar.to_string());
        }
        if !self.radicand.is_one() {
            parts.push(format!("sqrt({})", self.radicand));
        }
        if self.factorial {
            parts.push("(2m)!".into());
        }
        if !self.base.is_one() {
            if self.base.is_integer() {
                parts.push(format!("{}^(-m)", self.base));
            } else {
                parts.push(format!("({})^(-m)", self.base));
            }
        }
        if self.m_power != 0 {
            parts.push(format!("m^{}", self.m_power));
        }
        parts.extend(self.factors.iter().map(|x| x.to_string()));
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn square_root_normal_form() {
        assert_eq!(sqrt_normal_form(&rat(1, 2)), (rat(1, 2), rat(2, 1)));
        assert_eq!(sqrt_normal_form(&rat(8, 1)), (rat(2, 1), rat(2, 1)));
        assert_eq!(sqrt_normal_form(&rat(9, 4)), (rat(3, 2), rat(1, 1)));
        assert_eq!(sqrt_normal_form(&rat(1, 16)), (rat(1, 4), rat(1, 1)));
    }

    #[test]
    fn equivalence_ignores_how_constants_are_split() {
        let mut a = AsymptoticPrefactor::unit();
        a.sign = -1;
        a.factorial = true;
        a.base = rat(2, 1);
        a.scalar = rat(3, 4);
        a.radicand = rat(2, 1);
        a.factors = vec![LinearFactor::new(rat(1, 1), rat(0, 1)), LinearFactor::new(rat(2, 1), rat(-1, 1))];
        // 3/2 * sqrt(1/2) * m * (2m - 1)
        let mut b = a.clone();
        b.scalar = rat(3, 2);
        b.radicand = rat(1, 2);
        assert!(a.equivalent(&b));
        // 3/2 * sqrt(1/2) * (2m) * (m - 1/2)
        b.factors = vec![LinearFactor::new(rat(2, 1), rat(0, 1)), LinearFactor::new(rat(1, 1), rat(-1, 2))];
        assert!(a.equivalent(&b));
        b.sign = 1;
        assert!(!a.equivalent(&b));
    }

    #[test]
    fn rational_part_evaluates() {
        let mut p = AsymptoticPrefactor::unit();
        p.factorial = true;
        p.base = rat(2, 1);
        p.factors = vec![LinearFactor::new(rat(1, 1), rat(0, 1))];
        // 4! * 2^-2 * 2 = 12
        assert_eq!(p.rational_part(2), rat(12, 1));
    }
}
