//! Asymptotic expansions of the connected counts for `m -> infinity`.
//!
//! Each composition family (one part near `m`, or `n` parts near `m/n`)
//! contributes `prefactor * [1 + a_1/m + a_2/m^2 + ...]` with exact rational
//! `a_k`. The principal family dominates; the centered families are
//! exponentially smaller (`n^-m`).

mod family;
mod laurent;
mod prefactor;
mod stirling;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

pub use family::{
    centered_base, large_part_ratio, CompositionFamily, FamilyFormula, FamilyKind,
    LargePartExpansion, Part,
};
pub use laurent::LaurentSeries;
pub use prefactor::{sqrt_normal_form, AsymptoticPrefactor, LinearFactor};
pub use stirling::{bernoulli, bernoulli_polynomial, loggamma_ratio_series, GammaFactor};

use crate::counts::formulas::ExplicitFormula;
use crate::exact::{int_rat, rat, ExactRat, Polynomial};
use crate::{Error, Result};
use family::FamilyTables;

/// Highest family index and leg count covered by [`contribution`].
pub const MAX_TABULATED_FAMILY: u32 = 4;
pub const MAX_TABULATED_LEGS: u32 = 5;

/// Knobs for [`expand_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionOptions {
    /// Number of correction coefficients after the leading 1.
    pub order: usize,
    /// Largest total offset of the members summed; defaults to `order`.
    pub offset_budget: Option<u32>,
    /// Recompute with the budget raised by 2 and require identical output.
    pub check_stability: bool,
    pub large_parts: LargePartExpansion,
    pub summation: Summation,
}

/// How the member terms of a family are added up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Summation {
    /// Factorized recursion over (large parts, offset, small mass) states.
    #[default]
    Factorized,
    /// One member at a time; slow, kept as a cross-check.
    PerMember,
}

impl ExpansionOptions {
    pub fn new(order: usize) -> Self {
        ExpansionOptions {
            order,
            offset_budget: None,
            check_stability: true,
            large_parts: LargePartExpansion::Rational,
            summation: Summation::Factorized,
        }
    }
}

/// `prefactor * series`, with `series` starting at exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticContribution {
    pub legs: u32,
    pub family: u32,
    pub order: usize,
    pub prefactor: AsymptoticPrefactor,
    pub series: LaurentSeries,
}

impl AsymptoticContribution {
    /// Coefficients of `t^0 .. t^order`.
    pub fn coefficients(&self) -> Vec<ExactRat> {
        (0..=self.order as i64).map(|e| self.series.coeff(e)).collect()
    }

    /// `c_1 .. c_order` in the form `1 - c_1/m - c_2/m^2 - ...`.
    pub fn subtracted_coefficients(&self) -> Vec<ExactRat> {
        (1..=self.order as i64).map(|e| -self.series.coeff(e)).collect()
    }
}

/// Expands one family of one exact formula.
pub fn expand_family(
    kind: FamilyKind,
    formula: FamilyFormula,
    options: &ExpansionOptions,
) -> Result<AsymptoticContribution> {
    let budget = options.offset_budget.unwrap_or(options.order as u32);
    if budget < options.order as u32 {
        return Err(Error::InvalidArgument(format!(
            "offset budget {budget} is below the order {}",
            options.order
        )));
    }
    let first = expand_with_budget(kind, formula, options, budget)?;
    if options.check_stability {
        let second = expand_with_budget(kind, formula, options, budget + 2)?;
        for e in 0..=options.order as i64 {
            let (a, b) = (first.series.coeff(e), second.series.coeff(e));
            if a != b {
                return Err(Error::Unstable {
                    power: e as usize,
                    before: a.to_string(),
                    after: b.to_string(),
                });
            }
        }
        if first.prefactor != second.prefactor {
            return Err(Error::Unstable {
                power: 0,
                before: first.prefactor.to_string(),
                after: second.prefactor.to_string(),
            });
        }
    }
    Ok(first)
}

fn expand_with_budget(
    kind: FamilyKind,
    formula: FamilyFormula,
    options: &ExpansionOptions,
    budget: u32,
) -> Result<AsymptoticContribution> {
    let legs = formula.legs();
    let order = options.order as i64;
    let mut cap = order + 3 + i64::from(legs);
    // the working precision is raised if cancellation eats into it
    for _ in 0..4 {
        match expand_at_cap(kind, formula, options, budget, cap) {
            Err(Error::Precision { .. }) => cap += 4,
            other => return other,
        }
    }
    expand_at_cap(kind, formula, options, budget, cap)
}

fn expand_at_cap(
    kind: FamilyKind,
    formula: FamilyFormula,
    options: &ExpansionOptions,
    budget: u32,
    cap: i64,
) -> Result<AsymptoticContribution> {
    let legs = formula.legs();
    let n = kind.large_parts();
    let order = options.order as i64;
    let tables = FamilyTables::new(kind, budget, cap, options.large_parts)?;
    let mut sum = match options.summation {
        Summation::Factorized => tables.family_sum(&formula)?,
        Summation::PerMember => tables.family_sum_by_member(&formula)?,
    };

    let mut prefactor = AsymptoticPrefactor::unit();
    prefactor.factorial = true;

    if legs > 0 {
        let (scale, factors) = leading_factors(legs)?;
        let poly = factors
            .iter()
            .fold(Polynomial::from_ints(&[1]), |acc, f| acc.mul(&f.polynomial()))
            .scale(&scale);
        let wide = cap + 24;
        let m = LaurentSeries::affine(&ExactRat::one(), &ExactRat::zero(), wide);
        let mut p = LaurentSeries::zero(wide);
        for c in poly.coeffs().iter().rev() {
            p = p.mul(&m).add(&LaurentSeries::constant(c.clone(), wide));
        }
        sum = sum.mul(&p.inverse()?);
        prefactor = prefactor.scaled(&scale);
        prefactor.factors = factors;
    }

    if n >= 2 {
        let (base, base_pre) = centered_base(n, (cap + 2).max(1) as usize)?;
        sum = sum.mul(&base);
        prefactor = prefactor.times_sqrt(&base_pre.scalar, &base_pre.radicand);
        prefactor.base = base_pre.base;
        prefactor.m_power += base_pre.m_power;
    }

    let sum = sum.normalized();
    if sum.precision() - sum.val() < order + 1 {
        return Err(Error::Precision {
            have: sum.precision() - sum.val() - 1,
            need: order,
        });
    }
    let lead = sum.coeff(sum.val());
    if lead.is_zero() {
        return Err(Error::Precision { have: -1, need: order });
    }
    prefactor = prefactor.scaled(&lead);
    prefactor.m_power -= sum.val();
    let series = sum
        .shift(-sum.val())
        .scale(&lead.recip())
        .truncated(order + 1);
    Ok(AsymptoticContribution {
        legs,
        family: n,
        order: options.order,
        prefactor,
        series,
    })
}

/// The leading polynomial of the `N`-leg formula as `scale * m * prod_{j=1}^{N-1} (2m - j)`,
/// checked against the polynomial read off the formula itself.
fn leading_factors(legs: u32) -> Result<(ExactRat, Vec<LinearFactor>)> {
    let formula = ExplicitFormula::for_legs(legs)?;
    let leading = formula.leading_polynomial();
    let mut factors = vec![LinearFactor::new(ExactRat::one(), ExactRat::zero())];
    for j in 1..legs {
        factors.push(LinearFactor::new(rat(2, 1), rat(-i64::from(j), 1)));
    }
    let product = factors
        .iter()
        .fold(Polynomial::from_ints(&[1]), |acc, f| acc.mul(&f.polynomial()));
    let top = |p: &Polynomial| p.coeffs().last().cloned().unwrap_or_else(ExactRat::zero);
    let scale = top(&leading) / top(&product);
    if product.scale(&scale) != leading {
        return Err(Error::Unsupported(format!(
            "leading polynomial {leading} of the N = {legs} formula does not factor as expected"
        )));
    }
    Ok((scale, factors))
}

/// The normalized correction series of a family, `1 + a_1 t + ...`.
pub fn family_terms(kind: FamilyKind, formula: FamilyFormula, order: usize) -> Result<LaurentSeries> {
    Ok(expand_family(kind, formula, &ExpansionOptions::new(order))?.series)
}

/// The contribution of family `n` (1 = principal) to the connected count with `N` legs.
pub fn contribution(legs: u32, n: u32, order: usize) -> Result<AsymptoticContribution> {
    if legs > MAX_TABULATED_LEGS || n == 0 || n > MAX_TABULATED_FAMILY {
        return Err(Error::Unsupported(format!(
            "contribution covers N = 0..={MAX_TABULATED_LEGS} and n = 1..={MAX_TABULATED_FAMILY}; \
             use family_terms (CLI: --family custom) for N = {legs}, n = {n}"
        )));
    }
    expand_family(
        FamilyKind::from_index(n)?,
        FamilyFormula::from_legs(legs),
        &ExpansionOptions::new(order),
    )
}

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lower: ExactRat,
    pub upper: ExactRat,
}

impl Enclosure {
    pub fn exact(v: ExactRat) -> Self {
        Enclosure { lower: v.clone(), upper: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn midpoint(&self) -> ExactRat {
        (&self.lower + &self.upper) / rat(2, 1)
    }

    pub fn width(&self) -> ExactRat {
        &self.upper - &self.lower
    }

    fn add(&self, other: &Self) -> Self {
        Enclosure {
            lower: &self.lower + &other.lower,
            upper: &self.upper + &other.upper,
        }
    }

    /// `c * [lower, upper]` for a rational `c`.
    fn scale(&self, c: &ExactRat) -> Self {
        let (a, b) = (c * &self.lower, c * &self.upper);
        if c.is_negative() {
            Enclosure { lower: b, upper: a }
        } else {
            Enclosure { lower: a, upper: b }
        }
    }

    /// The interval of `|v - x|` over `v` in `self`.
    pub fn distance_to(&self, x: &ExactRat) -> Enclosure {
        let a = (&self.lower - x).abs();
        let b = (&self.upper - x).abs();
        let contains = &self.lower <= x && x <= &self.upper;
        let lower = if contains { ExactRat::zero() } else { a.clone().min(b.clone()) };
        Enclosure { lower, upper: a.max(b) }
    }
}

/// Bits of precision used for square roots in [`evaluate_truncated`].
pub const SQRT_BITS: u32 = 256;

/// `sqrt(r)` for a non-negative integer-valued rational, as a `2^-bits` enclosure.
pub fn sqrt_enclosure(r: &ExactRat, bits: u32) -> Enclosure {
    let scaled = r * int_rat(BigInt::one() << (2 * bits));
    let floor = scaled.to_integer();
    let root = floor.magnitude().sqrt();
    let denom = BigInt::one() << bits;
    let lo = ExactRat::new(BigInt::from_biguint(Sign::Plus, root.clone()), denom.clone());
    if &lo * &lo == *r {
        return Enclosure::exact(lo);
    }
    let hi = ExactRat::new(BigInt::from_biguint(Sign::Plus, root + 1u32), denom);
    Enclosure { lower: lo, upper: hi }
}

/// Sum of the contributions at a concrete `m`, each truncated after `t^order`.
///
/// Irrational prefactors make the result an interval; it is exact when no
/// square root is involved.
pub fn evaluate_truncated(
    contributions: &[AsymptoticContribution],
    m: u64,
    order: usize,
) -> Result<Enclosure> {
    if m <= order as u64 {
        return Err(Error::Regime { m, order });
    }
    let mut total = Enclosure::exact(ExactRat::zero());
    for c in contributions {
        if !m.is_multiple_of(u64::from(c.family)) {
            return Err(Error::Divisibility { m, n: c.family });
        }
        if order > c.order {
            return Err(Error::InvalidArgument(format!(
                "contribution expanded to order {} cannot be evaluated at order {order}",
                c.order
            )));
        }
        let series = c.series.clone().truncated(order as i64 + 1);
        let value = c.prefactor.rational_part(m) * series.eval_at(&int_rat(BigInt::from(m)));
        let root = sqrt_enclosure(&c.prefactor.radicand, SQRT_BITS);
        total = total.add(&root.scale(&value));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fractions(v: &[(i64, i64)]) -> Vec<ExactRat> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn principal_vacuum() {
        let c = contribution(0, 1, 6).unwrap();
        assert_eq!(
            c.subtracted_coefficients(),
            fractions(&[(1, 2), (3, 4), (19, 8), (191, 16), (2551, 32), (41935, 64)])
        );
        assert_eq!(c.prefactor.sign, 1);
        assert_eq!(c.prefactor.scalar, rat(1, 1));
        assert_eq!(c.prefactor.m_power, 0);
    }

    #[test]
    fn binomial_centered_vacuum() {
        let c = contribution(0, 2, 2).unwrap();
        assert_eq!(c.subtracted_coefficients(), fractions(&[(33, 8), (1599, 128)]));
        assert_eq!(c.prefactor.sign, -1);
        assert_eq!((c.prefactor.scalar.clone(), c.prefactor.radicand.clone()), (rat(1, 2), rat(2, 1)));
        assert_eq!(c.prefactor.base, rat(2, 1));
    }

    #[test]
    fn zero_order_is_prefactor_only() {
        let c = contribution(0, 2, 0).unwrap();
        assert_eq!(c.coefficients(), vec![rat(1, 1)]);
    }

    #[test]
    fn untabulated_cells_are_refused() {
        assert!(matches!(contribution(6, 1, 2), Err(Error::Unsupported(_))));
        assert!(matches!(contribution(0, 5, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn stirling_and_rational_large_parts_give_the_same_expansion() {
        for (legs, n) in [(0, 1), (2, 1), (1, 2)] {
            let mut opts = ExpansionOptions::new(4);
            opts.check_stability = false;
            let a = expand_family(FamilyKind::from_index(n).unwrap(), FamilyFormula::from_legs(legs), &opts).unwrap();
            opts.large_parts = LargePartExpansion::Stirling;
            let b = expand_family(FamilyKind::from_index(n).unwrap(), FamilyFormula::from_legs(legs), &opts).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn regime_and_divisibility_guards() {
        let p = contribution(0, 1, 6).unwrap();
        assert_eq!(evaluate_truncated(std::slice::from_ref(&p), 4, 6), Err(Error::Regime { m: 4, order: 6 }));
        let c = contribution(0, 3, 1).unwrap();
        assert_eq!(evaluate_truncated(&[c], 20, 1), Err(Error::Divisibility { m: 20, n: 3 }));
    }

    #[test]
    fn square_root_enclosure() {
        let e = sqrt_enclosure(&rat(2, 1), 64);
        assert!(&e.lower * &e.lower < rat(2, 1));
        assert!(&e.upper * &e.upper > rat(2, 1));
        assert!(sqrt_enclosure(&rat(9, 1), 8).is_exact());
    }
}
