//! Composition-indexed coefficients: `F(c)`, the coefficients `h_m` of the
//! reciprocal vacuum series, the symbols `C_n^m` and their leg-weighted
//! generalizations, and the `H` coefficients of the normalized leg series.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{
    binomial, compositions, compositions_with_parts, factorial, sign_pow, total_contractions,
    Composition, ExactInt, MultiIndex,
};
use crate::{Error, Result};

/// `(2a)!/a!`, the contribution of a single part.
pub fn part_weight(a: u32) -> ExactInt {
    factorial(2 * u64::from(a)) / factorial(u64::from(a))
}

/// `F(c)`: product of `(2a)!/a!` over the parts of `c`.
pub fn composition_weight(c: &Composition) -> ExactInt {
    c.parts()
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * part_weight(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HInverseMethod {
    /// Alternating sum of `F(c)` over all compositions of `m`.
    CompositionSum,
    /// `h_m = -sum_{n=1}^m (D_n/n!) h_{m-n}`, memoized.
    Recurrence,
}

static H_CACHE: LazyLock<RwLock<Vec<ExactInt>>> = LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

/// Coefficient of `y^m` in `1/g(y)`, where `g(y) = sum_m (2m)!/m! y^m`.
pub fn h_inverse_coeff(m: u32, method: HInverseMethod) -> ExactInt {
    match method {
        HInverseMethod::CompositionSum => {
            if m == 0 {
                return BigInt::one();
            }
            compositions(m).fold(BigInt::zero(), |acc, c| {
                let w = composition_weight(&c);
                if c.len() % 2 == 0 {
                    acc + w
                } else {
                    acc - w
                }
            })
        }
        HInverseMethod::Recurrence => h_recurrence(m as usize),
    }
}

fn h_recurrence(m: usize) -> ExactInt {
    if let Some(v) = H_CACHE.read().unwrap().get(m) {
        return v.clone();
    }
    let mut cache = H_CACHE.write().unwrap();
    while cache.len() <= m {
        let next = cache.len();
        let s = (1..=next).fold(BigInt::zero(), |acc, n| {
            acc + part_weight(n as u32) * &cache[next - n]
        });
        cache.push(-s);
    }
    cache[m].clone()
}

static C_CACHE: LazyLock<RwLock<HashMap<(u32, u32), ExactInt>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn check_symbol_range(n: u32, m: u32) -> Result<()> {
    if n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "symbol C_n^m needs 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// The symbol `C_n^m = (m!/n!) h_{m-n}`, with `C_m^m = 1`.
pub fn c_symbol(n: u32, m: u32) -> Result<ExactInt> {
    check_symbol_range(n, m)?;
    if let Some(v) = C_CACHE.read().unwrap().get(&(n, m)) {
        return Ok(v.clone());
    }
    let v = if n == m {
        BigInt::one()
    } else {
        factorial(u64::from(m)) / factorial(u64::from(n))
            * h_inverse_coeff(m - n, HInverseMethod::Recurrence)
    };
    C_CACHE.write().unwrap().insert((n, m), v.clone());
    Ok(v)
}

/// `C_n^m` evaluated literally as a sum over the compositions of `m - n`.
/// Exponential in `m - n`; kept as an independent reference.
pub fn c_symbol_composition_sum(n: u32, m: u32) -> Result<ExactInt> {
    check_symbol_range(n, m)?;
    if n == m {
        return Ok(BigInt::one());
    }
    let s = (1..=m - n).fold(BigInt::zero(), |acc, i| {
        let inner = compositions_with_parts(m - n, i)
            .fold(BigInt::zero(), |a, c| a + composition_weight(&c));
        acc + inner * sign_pow(i as usize)
    });
    Ok(factorial(u64::from(m)) / factorial(u64::from(n)) * s)
}

/// `f_{n_r}(a) = binomial(2a + n_r, n_r) - 1`.
pub fn f_leg(leg: u32, a: u32) -> ExactInt {
    binomial(2 * u64::from(a) + u64::from(leg), u64::from(leg)) - 1
}

/// Generalized symbol `<C_n^m>_{n_1..n_k}`: the alternating composition sum of
/// `C_n^m` with each term weighted by `binomial(i, k) f_{n_1}(a_1)...f_{n_k}(a_k)`.
///
/// Returns zero when `m - n < k`. With an empty index this is `C_n^m`.
pub fn c_symbol_generalized(n: u32, m: u32, idx: &MultiIndex) -> Result<ExactInt> {
    let k = idx.len() as u32;
    if k == 0 {
        return c_symbol(n, m);
    }
    if n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "generalized symbol needs 1 <= n <= m - k, got n = {n}, m = {m}, k = {k}"
        )));
    }
    let s = m - n;
    if s < k {
        return Ok(BigInt::zero());
    }
    let s_us = s as usize;
    let k_us = k as usize;

    // tail[r][l]: sum of F over compositions of r with l parts
    let weights: Vec<ExactInt> = (0..=s).map(part_weight).collect();
    let mut tail = vec![vec![BigInt::zero(); s_us + 1]; s_us + 1];
    tail[0][0] = BigInt::one();
    for r in 1..=s_us {
        for l in 1..=r {
            let mut acc = BigInt::zero();
            for a in 1..=r - l + 1 {
                if !tail[r - a][l - 1].is_zero() {
                    acc += &weights[a] * &tail[r - a][l - 1];
                }
            }
            tail[r][l] = acc;
        }
    }
    // inner[r]: sum over tails of mass r with sign (-1)^(k+l) binomial(k+l, k)
    let inner: Vec<ExactInt> = (0..=s_us)
        .map(|r| {
            (0..=r).fold(BigInt::zero(), |acc, l| {
                acc + &tail[r][l] * binomial((k_us + l) as u64, k as u64) * sign_pow(k_us + l)
            })
        })
        .collect();

    let legs = idx.indices();
    let mut total = BigInt::zero();
    let mut stack: Vec<(usize, u32, ExactInt)> = vec![(0, 0, BigInt::one())];
    while let Some((depth, used, prod)) = stack.pop() {
        if depth == k_us {
            total += prod * &inner[(s - used) as usize];
            continue;
        }
        let remaining_heads = (k_us - depth - 1) as u32;
        for a in 1..=s - used - remaining_heads {
            let w = &prod * f_leg(legs[depth], a) * &weights[a as usize];
            stack.push((depth + 1, used + a, w));
        }
    }
    Ok(factorial(u64::from(m)) / factorial(u64::from(n)) * total)
}

/// Generalized symbol by direct summation over every composition of `m - n`.
pub fn c_symbol_generalized_composition_sum(n: u32, m: u32, idx: &MultiIndex) -> Result<ExactInt> {
    let k = idx.len();
    if k == 0 {
        return c_symbol_composition_sum(n, m);
    }
    if n < 1 || n > m {
        return Err(Error::InvalidArgument(format!(
            "generalized symbol needs 1 <= n <= m - k, got n = {n}, m = {m}, k = {k}"
        )));
    }
    if ((m - n) as usize) < k {
        return Ok(BigInt::zero());
    }
    let s = compositions(m - n)
        .filter(|c| c.len() >= k)
        .fold(BigInt::zero(), |acc, c| {
            let mut term = composition_weight(&c) * binomial(c.len() as u64, k as u64);
            for (leg, &a) in idx.indices().iter().zip(c.parts()) {
                term *= f_leg(*leg, a);
            }
            acc + term * sign_pow(c.len())
        });
    Ok(factorial(u64::from(m)) / factorial(u64::from(n)) * s)
}

/// `N_n^(legs)/legs! - D_n`.
pub fn leg_difference(n: u32, legs: u32) -> ExactInt {
    total_contractions(u64::from(n), u64::from(legs)) / factorial(u64::from(legs))
        - total_contractions(u64::from(n), 0)
}

/// `H_m^(N) = sum_{n=1}^m C_n^m [N_n^(N)/N! - D_n]`, for `m, N >= 1`.
pub fn h_coeff(m: u32, legs: u32) -> Result<ExactInt> {
    if m < 1 || legs < 1 {
        return Err(Error::InvalidArgument(format!(
            "H_m^(N) needs m >= 1 and N >= 1, got m = {m}, N = {legs}"
        )));
    }
    let mut acc = BigInt::zero();
    for n in 1..=m {
        acc += c_symbol(n, m)? * leg_difference(n, legs);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HMultiMethod {
    /// Multinomial convolution of single-index `H` coefficients.
    Convolution,
    /// Single sum over generalized symbols with the largest index split off.
    Simplified,
}

/// Multi-index coefficient `H_m^(n_1..n_j)`. Zero when `m < j`.
pub fn h_multi(m: u32, idx: &MultiIndex, method: HMultiMethod) -> Result<ExactInt> {
    let j = idx.len() as u32;
    if j == 0 {
        return Err(Error::InvalidArgument("H_m needs a non-empty multi-index".into()));
    }
    if m < j {
        return Ok(BigInt::zero());
    }
    match method {
        HMultiMethod::Convolution => {
            let legs = idx.indices();
            let mut acc = BigInt::zero();
            for c in compositions_with_parts(m, j) {
                let mut term = factorial(u64::from(m));
                for (&k, &leg) in c.parts().iter().zip(legs) {
                    term = term * h_coeff(k, leg)? / factorial(u64::from(k));
                }
                acc += term;
            }
            Ok(acc)
        }
        HMultiMethod::Simplified => {
            let (rest, largest) = idx.split_last().expect("non-empty");
            let mut acc = BigInt::zero();
            for n in 1..=m - j + 1 {
                acc += c_symbol_generalized(n, m, &rest)? * leg_difference(n, largest);
            }
            Ok(acc * sign_pow(j as usize + 1))
        }
    }
}
