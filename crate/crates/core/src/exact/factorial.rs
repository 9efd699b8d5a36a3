use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::ExactInt;

static FACTORIALS: LazyLock<RwLock<Vec<ExactInt>>> =
    LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

/// `k!`, memoized in a process-wide append-only table.
pub fn factorial(k: u64) -> ExactInt {
    let k = k as usize;
    {
        let table = FACTORIALS.read().unwrap();
        if let Some(v) = table.get(k) {
            return v.clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap();
    // another writer may have extended the table in the meantime
    while table.len() <= k {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[k].clone()
}

/// Number of all order-`m` Wick contractions with `2N` external legs, `(2m+N)!`.
pub fn total_contractions(m: u64, legs: u64) -> ExactInt {
    factorial(2 * m + legs)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(k: u64) -> ExactInt {
        (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
    }

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), "2432902008176640000".parse::<BigInt>().unwrap());
    }

    #[test]
    fn cache_matches_uncached() {
        // query out of order so the cache grows in several steps
        for k in [30u64, 3, 57, 0, 41, 57] {
            assert_eq!(factorial(k), naive(k));
        }
    }

    #[test]
    fn contractions() {
        assert_eq!(total_contractions(1, 1), BigInt::from(6));
        assert_eq!(total_contractions(2, 0), BigInt::from(24));
        assert_eq!(total_contractions(2, 3), BigInt::from(5040));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
