//! The closed composition formulas for connected counts with `N = 1..=5`
//! external pairs, stored as data so that the exact evaluator and the
//! asymptotic expansion read the same terms.
//!
//! Each formula has the shape
//!
//! ```text
//! N_c,m^(N) = sum_groups sum_{n=1}^{m-k} w(n, m) <C_n^m>_{idx} (N_n^(N)/N! - N_n^(N-1)/(N-1)!)
//! ```
//!
//! where `k = |idx|` and `w(n, m) = scale * (m - n)^{0|1} * prod(num(n)) / prod(den(n))`.

use num_traits::{One, Zero};

use crate::exact::{
    c_symbol_generalized, factorial, int_rat, rat, to_integer, total_contractions, ExactInt,
    ExactRat, MultiIndex, Polynomial,
};
use crate::{Error, Result};

/// One `sum_n` block of an explicit formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumGroup {
    pub symbol: MultiIndex,
    pub scale: ExactRat,
    /// Whether the weight carries a factor `(m - n)`.
    pub m_minus_n: bool,
    pub numerator: Vec<Polynomial>,
    pub denominator: Vec<Polynomial>,
}

impl SumGroup {
    fn new(symbol: &[u32], scale: i64, m_minus_n: bool, num: &[&[i64]], den: &[&[i64]]) -> Self {
        SumGroup {
            symbol: MultiIndex::new(symbol.to_vec()).expect("static multi-index"),
            scale: rat(scale, 1),
            m_minus_n,
            numerator: num.iter().map(|p| Polynomial::from_ints(p)).collect(),
            denominator: den.iter().map(|p| Polynomial::from_ints(p)).collect(),
        }
    }

    /// Exact weight `w(n, m)`.
    pub fn weight(&self, n: u32, m: u32) -> ExactRat {
        let x = rat(i64::from(n), 1);
        let mut w = self.scale.clone();
        if self.m_minus_n {
            w *= rat(i64::from(m) - i64::from(n), 1);
        }
        for p in &self.numerator {
            w *= p.eval(&x);
        }
        for p in &self.denominator {
            w /= p.eval(&x);
        }
        w
    }
}

/// `N_n^(N)/N! - N_n^(N-1)/(N-1)!` for `N >= 1`.
pub fn leg_step(n: u32, legs: u32) -> ExactInt {
    let (n, legs) = (u64::from(n), u64::from(legs));
    total_contractions(n, legs) / factorial(legs) - total_contractions(n, legs - 1) / factorial(legs - 1)
}

/// Explicit formula for a fixed number of external pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFormula {
    legs: u32,
    groups: Vec<SumGroup>,
}

const N2: &[i64] = &[1, 2]; // 2n + 1
const N3: &[i64] = &[3, 2]; // 2n + 3
const P1: &[i64] = &[1, 1]; // n + 1
const P2: &[i64] = &[2, 1]; // n + 2

impl ExplicitFormula {
    /// The formula for `legs` external pairs, `1 <= legs <= 5`.
    pub fn for_legs(legs: u32) -> Result<Self> {
        let groups = match legs {
            1 => vec![SumGroup::new(&[], 1, false, &[], &[])],
            // (4m - 2n - 1)/(2n + 1) split as (2n - 1)/(2n + 1) + 4(m - n)/(2n + 1)
            2 => vec![
                SumGroup::new(&[], 1, false, &[&[-1, 2]], &[N2]),
                SumGroup::new(&[], 4, true, &[], &[N2]),
            ],
            3 => vec![
                SumGroup::new(&[], 1, false, &[&[-1, 1], &[-1, 2]], &[P1, N2]),
                SumGroup::new(&[], 9, true, &[&[-1, 2]], &[P1, N2]),
                SumGroup::new(&[1, 1], 6, false, &[], &[P1, N2]),
            ],
            4 => vec![
                SumGroup::new(&[], 1, false, &[&[-1, 2], &[-3, 2], &[-1, 1]], &[N2, N3, P1]),
                SumGroup::new(&[], 16, true, &[&[-7, -24, 4]], &[N2, N3, P1]),
                SumGroup::new(&[2], 18, false, &[], &[N2, P1]),
                SumGroup::new(&[1, 1], 72, false, &[&[-1, 2]], &[N3, N2, P1]),
                SumGroup::new(&[1, 1, 1], 72, false, &[], &[N3, N2, P1]),
            ],
            5 => {
                let den: &[&[i64]] = &[N2, N3, P1, P2];
                vec![
                    SumGroup::new(&[], 1, false, &[&[-1, 2], &[-3, 2], &[-1, 1], &[-2, 1]], den),
                    SumGroup::new(&[], 25, true, &[&[89, 131, -44, 4]], den),
                    SumGroup::new(&[2], 100, false, &[&[-8, -3, 2]], den),
                    SumGroup::new(&[1, 1], 200, false, &[&[-8, -21, 2]], den),
                    SumGroup::new(&[2, 1], 450, false, &[], &[N2, P1, P2]),
                    SumGroup::new(&[1, 1, 1], 900, false, &[&[-1, 2]], den),
                    SumGroup::new(&[1, 1, 1, 1], 720, false, &[], den),
                ]
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "explicit formulas exist for N = 1..=5, not N = {legs}; use the series route"
                )))
            }
        };
        Ok(ExplicitFormula { legs, groups })
    }

    pub fn legs(&self) -> u32 {
        self.legs
    }

    pub fn groups(&self) -> &[SumGroup] {
        &self.groups
    }

    /// Leading polynomial in `m` of the `n = m` term of the first group,
    /// divided by `(2m)!`: `w(m, m) * leg_step(m) / (2m)!`.
    pub fn leading_polynomial(&self) -> Polynomial {
        // leg_step(n)/(2n)! = (2n)(2n+1)...(2n+N-1)/N!
        let mut p = Polynomial::from_ints(&[1]);
        for j in 0..self.legs {
            p = p.mul(&Polynomial::from_ints(&[i64::from(j), 2]));
        }
        let p = p.scale(&ExactRat::new(1.into(), factorial(u64::from(self.legs))));
        let first = &self.groups[0];
        debug_assert!(!first.m_minus_n && first.symbol.is_empty());
        let mut num = p.scale(&first.scale);
        for q in &first.numerator {
            num = num.mul(q);
        }
        for q in &first.denominator {
            num = divide_exact(&num, q);
        }
        num
    }

    /// Evaluates the formula at order `m` exactly.
    pub fn evaluate(&self, m: u32) -> Result<ExactInt> {
        if m == 0 {
            return Ok(if self.legs == 1 { ExactInt::one() } else { ExactInt::zero() });
        }
        let mut acc = ExactRat::zero();
        for g in &self.groups {
            let k = g.symbol.len() as u32;
            for n in 1..=m.saturating_sub(k) {
                let sym = c_symbol_generalized(n, m, &g.symbol)?;
                if sym.is_zero() {
                    continue;
                }
                acc += g.weight(n, m) * int_rat(sym * leg_step(n, self.legs));
            }
        }
        to_integer(&acc)
    }
}

// polynomial division that must leave no remainder
fn divide_exact(num: &Polynomial, den: &Polynomial) -> Polynomial {
    let d = den.coeffs();
    let lead = d.last().expect("nonzero divisor").clone();
    let mut rem: Vec<ExactRat> = num.coeffs().to_vec();
    if rem.len() < d.len() {
        assert!(num.is_zero(), "inexact polynomial division");
        return num.clone();
    }
    let mut quot = vec![ExactRat::zero(); rem.len() - d.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + d.len() - 1] / &lead;
        for (j, dj) in d.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    Polynomial::new(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_counts_follow_partitions() {
        let expected = [1usize, 2, 3, 5, 7];
        for legs in 1..=5 {
            assert_eq!(ExplicitFormula::for_legs(legs).unwrap().groups().len(), expected[legs as usize - 1]);
        }
        assert!(ExplicitFormula::for_legs(6).is_err());
    }

    #[test]
    fn leg_steps() {
        // N_n^(1) - D_n = 2n (2n)!
        assert_eq!(leg_step(3, 1), ExactInt::from(6 * 720));
        // N_n^(2)/2 - N_n^(1) = (2n+1)/2 (2n) (2n)!
        assert_eq!(leg_step(1, 2), ExactInt::from(12 - 6));
    }

    #[test]
    fn leading_polynomials() {
        let m = Polynomial::from_ints(&[0, 1]);
        let lin = |b: i64| Polynomial::from_ints(&[b, 2]);
        let expect = [
            m.scale(&rat(2, 1)),
            m.mul(&lin(-1)),
            m.mul(&lin(-1)).mul(&lin(-2)).scale(&rat(1, 3)),
            m.mul(&lin(-1)).mul(&lin(-2)).mul(&lin(-3)).scale(&rat(1, 12)),
            m.mul(&lin(-1)).mul(&lin(-2)).mul(&lin(-3)).mul(&lin(-4)).scale(&rat(1, 60)),
        ];
        for legs in 1..=5u32 {
            let f = ExplicitFormula::for_legs(legs).unwrap();
            assert_eq!(f.leading_polynomial(), expect[legs as usize - 1], "N = {legs}");
        }
    }

    #[test]
    fn two_leg_split_matches_single_sum() {
        let f = ExplicitFormula::for_legs(2).unwrap();
        for m in 1..8u32 {
            for n in 1..=m {
                let split = f.groups()[0].weight(n, m) + f.groups()[1].weight(n, m);
                let printed = rat(4 * i64::from(m) - 2 * i64::from(n) - 1, 2 * i64::from(n) + 1);
                assert_eq!(split, printed);
            }
        }
    }
}
