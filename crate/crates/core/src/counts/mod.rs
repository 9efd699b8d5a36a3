//! Public counting API: connected vacuum counts, connected counts with
//! external legs through the explicit formulas or the series route, and the
//! normalized diagram counts.

pub mod formulas;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{
    binomial, composition_weight, compositions_with_parts, factorial, int_rat, rat, to_integer,
    total_contractions, ExactInt, ExactRat,
};
use crate::series::connected_from_log;
use crate::{oracle, Error, Result};

pub use formulas::{ExplicitFormula, SumGroup};

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Explicit,
    SeriesLog,
    Oracle,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Explicit, Method::SeriesLog, Method::Oracle, Method::Recurrence];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::SeriesLog => "series-log",
            Method::Oracle => "oracle",
            Method::Recurrence => "recurrence",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method '{s}'")))
    }
}

/// A connected count `N_c,m^(N)` together with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub legs: u32,
    pub m: u32,
    pub method: Method,
    pub value: ExactInt,
}

impl CountRecord {
    /// `value / (2^m m!)`.
    pub fn normalized(&self) -> ExactRat {
        normalize(&self.value, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VacuumMethod {
    /// `m! sum_i (-1)^(i+1)/i sum_{c in C_i(m)} F(c)`.
    CompositionSum,
    /// `D_m = sum_{i=1}^m binomial(m-1, i-1) D_c,i D_{m-i}` solved for `D_c,m`.
    Recurrence,
}

/// Connected vacuum count `D_c,m`, with `D_c,0 = 1`.
pub fn vacuum_connected(m: u32, method: VacuumMethod) -> ExactInt {
    if m == 0 {
        return BigInt::one();
    }
    match method {
        VacuumMethod::CompositionSum => {
            let mut acc = ExactRat::zero();
            for i in 1..=m {
                let s = compositions_with_parts(m, i)
                    .fold(BigInt::zero(), |a, c| a + composition_weight(&c));
                let sign = if i % 2 == 1 { 1 } else { -1 };
                acc += rat(sign, i64::from(i)) * int_rat(s);
            }
            to_integer(&(acc * int_rat(factorial(u64::from(m))))).expect("vacuum count is integral")
        }
        VacuumMethod::Recurrence => {
            let mut dc: Vec<ExactInt> = vec![BigInt::one()];
            for k in 1..=u64::from(m) {
                let mut rest = BigInt::zero();
                for i in 1..k {
                    rest += binomial(k - 1, i - 1) * &dc[i as usize] * total_contractions(k - i, 0);
                }
                dc.push(total_contractions(k, 0) - rest);
            }
            dc.pop().unwrap()
        }
    }
}

/// Connected count through the closed formula for `1 <= N <= 5`.
/// Orders below the first nonzero one (`m < N - 1`) give zero.
pub fn connected_explicit(legs: u32, m: u32) -> Result<ExactInt> {
    let formula = ExplicitFormula::for_legs(legs)?;
    if m + 1 < legs {
        return Ok(BigInt::zero());
    }
    formula.evaluate(m)
}

/// Connected count from `log Z`, for any `N` (`N = 0` gives the vacuum count).
pub fn connected_general(legs: u32, m: u32) -> Result<ExactInt> {
    connected_from_log(legs as usize, m as usize)?.get(legs as usize, m as usize)
}

fn normalize(value: &ExactInt, m: u32) -> ExactRat {
    ExactRat::new(
        value.clone(),
        (BigInt::one() << m as usize) * factorial(u64::from(m)),
    )
}

/// Diagrams with labeled external legs, `N_c,m^(N) / (2^m m!)`.
///
/// Returned as an exact rational; callers decide what a fractional value means.
pub fn normalized_count(legs: u32, m: u32) -> Result<ExactRat> {
    if legs == 0 {
        return Err(Error::InvalidArgument(
            "normalized counts are defined for N >= 1".into(),
        ));
    }
    Ok(normalize(&connected_general(legs, m)?, m))
}

/// Computes one count with the requested method.
///
/// `Explicit` and `Recurrence` for `N = 0` use the vacuum composition sum and
/// the vacuum recurrence; `Recurrence` has no `N >= 1` counterpart.
pub fn count(legs: u32, m: u32, method: Method, oracle_budget: u64) -> Result<CountRecord> {
    let value = match method {
        Method::Explicit if legs == 0 => vacuum_connected(m, VacuumMethod::CompositionSum),
        Method::Explicit => connected_explicit(legs, m)?,
        Method::SeriesLog => connected_general(legs, m)?,
        Method::Oracle => oracle::brute_force_connected(m, legs, oracle_budget)?,
        Method::Recurrence if legs == 0 => vacuum_connected(m, VacuumMethod::Recurrence),
        Method::Recurrence => {
            return Err(Error::Unsupported(
                "the recurrence route only covers vacuum counts (N = 0)".into(),
            ))
        }
    };
    Ok(CountRecord {
        legs,
        m,
        method,
        value,
    })
}
