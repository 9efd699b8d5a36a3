//! Exact integer and rational arithmetic, compositions, and the elementary
//! composition-indexed quantities everything else is built from.

mod compositions;
mod factorial;
mod multi_index;
mod polynomial;
mod symbols;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use compositions::{compositions, compositions_with_parts, Composition, Compositions};
pub use factorial::{binomial, factorial, total_contractions};
pub use multi_index::MultiIndex;
pub use polynomial::Polynomial;
pub use symbols::{
    c_symbol, c_symbol_composition_sum, c_symbol_generalized,
    c_symbol_generalized_composition_sum, f_leg, h_coeff, h_inverse_coeff, h_multi,
    composition_weight, leg_difference, part_weight, HInverseMethod, HMultiMethod,
};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Rational number over [`ExactInt`], always kept in lowest terms with a
/// positive denominator.
pub type ExactRat = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRat {
    ExactRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_rat(value: ExactInt) -> ExactRat {
    ExactRat::from_integer(value)
}

/// Returns the integer value of `r`, or [`crate::Error::NonInteger`].
pub fn to_integer(r: &ExactRat) -> crate::Result<ExactInt> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else {
        Err(crate::Error::NonInteger(r.to_string()))
    }
}

/// `(-1)^k` as a small integer.
pub(crate) fn sign_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
