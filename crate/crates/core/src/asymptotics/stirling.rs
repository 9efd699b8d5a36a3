//! Stirling expansion of products of Gamma functions at arguments `s*m + a`.
//!
//! With `z = s*m`,
//!
//! ```text
//! log Gamma(z + a) = (z + a - 1/2) log z - z + log(2 pi)/2
//!                    + sum_{k>=1} (-1)^(k+1) B_{k+1}(a) / (k (k+1) z^k)
//! ```
//!
//! For a product `prod Gamma(s_i m + a_i)^(e_i)` the `m log m`, `m` and
//! `log(2 pi)` pieces must cancel; what remains is a power of `m`, a
//! geometric factor `G^m`, a constant `prod s_i^(e_i (a_i - 1/2))` and a
//! power series in `t = 1/m` with rational coefficients.

use std::collections::BTreeMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::LaurentSeries;
use super::prefactor::{sqrt_normal_form, AsymptoticPrefactor};
use crate::exact::{binomial, int_rat, ExactRat};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

static BERNOULLI: LazyLock<RwLock<Vec<ExactRat>>> =
    LazyLock::new(|| RwLock::new(vec![ExactRat::one()]));

/// Bernoulli number `B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> ExactRat {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache").get(k) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache");
    while cache.len() <= k {
        let n = cache.len() as u64;
        let mut acc = ExactRat::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += int_rat(binomial(n + 1, j as u64)) * b;
        }
        cache.push(-acc / int_rat(BigInt::from(n + 1)));
    }
    cache[k].clone()
}

/// Bernoulli polynomial `B_k(x)`.
pub fn bernoulli_polynomial(k: usize, x: &ExactRat) -> ExactRat {
    let mut acc = ExactRat::zero();
    let mut power = ExactRat::one();
    // sum_j C(k, j) B_j x^(k-j), accumulated from j = k downwards
    for j in (0..=k).rev() {
        acc += int_rat(binomial(k as u64, j as u64)) * bernoulli(j) * &power;
        power *= x;
    }
    acc
}

/// One factor `Gamma(scale*m + offset)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub scale: ExactRat,
    pub offset: i64,
    pub exponent: i64,
}

impl GammaFactor {
    pub fn new(scale: ExactRat, offset: i64, exponent: i64) -> Self {
        GammaFactor { scale, offset, exponent }
    }
}

/// Expands `prod Gamma(scale*m + offset)^exponent` for `m -> infinity`.
///
/// The returned series has constant term 1; the prefactor carries the power
/// of `m`, the geometric factor and the (possibly irrational) constant.
pub fn loggamma_ratio_series(
    factors: &[GammaFactor],
    order: usize,
) -> Result<(LaurentSeries, AsymptoticPrefactor)> {
    for f in factors {
        if !f.scale.is_positive() {
            return Err(Error::InvalidArgument(format!("Gamma scale must be positive, got {}", f.scale)));
        }
    }
    let linear: ExactRat = factors.iter().map(|f| &f.scale * int_rat(f.exponent.into())).sum();
    if !linear.is_zero() {
        return Err(Error::NonCancelling(format!(
            "the m*log(m) terms leave {linear}*m*log(m)"
        )));
    }
    let count: i64 = factors.iter().map(|f| f.exponent).sum();
    if count != 0 {
        return Err(Error::NonCancelling(format!(
            "the log(2*pi) terms leave a factor (2*pi)^({count}/2)"
        )));
    }

    // G = prod s^(e*s); the exponent per distinct scale must be an integer
    let mut by_scale: BTreeMap<ExactRat, ExactRat> = BTreeMap::new();
    for f in factors {
        *by_scale.entry(f.scale.clone()).or_insert_with(ExactRat::zero) +=
            &f.scale * int_rat(f.exponent.into());
    }
    let mut geometric = ExactRat::one();
    for (s, e) in &by_scale {
        if !e.is_integer() {
            return Err(Error::NonCancelling(format!(
                "geometric factor ({s})^(({e})*m) is not rational"
            )));
        }
        let e = e.to_integer().to_i32().ok_or_else(|| {
            Error::InvalidArgument(format!("geometric exponent {e} out of range"))
        })?;
        geometric *= s.pow(e);
    }

    // constant prod s^(e (a - 1/2)) = sqrt(prod s^(e (2a - 1)))
    let mut square = ExactRat::one();
    let mut m_power = 0i64;
    for f in factors {
        let e = f.exponent * (2 * f.offset - 1);
        square *= f.scale.pow(e as i32);
        m_power += f.exponent * f.offset;
    }
    let (scalar, radicand) = sqrt_normal_form(&square);

    let mut log = vec![ExactRat::zero(); order + 1];
    for (k, slot) in log.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let denom = int_rat(BigInt::from(k * (k + 1)));
        for f in factors {
            let b = bernoulli_polynomial(k + 1, &int_rat(f.offset.into()));
            let s_k = f.scale.pow(-(k as i32));
            *slot += b * s_k * int_rat((sign * f.exponent).into()) / &denom;
        }
    }
    let series = TruncatedSeries::new(log, order).exp()?;
    let prefactor = AsymptoticPrefactor {
        sign: 1,
        scalar,
        radicand,
        base: geometric.recip(),
        factorial: false,
        factors: Vec::new(),
        m_power,
    };
    Ok((LaurentSeries::from_power_series(&series), prefactor))
}
