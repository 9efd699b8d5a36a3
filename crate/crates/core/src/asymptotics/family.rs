//! Composition families and the sum of their terms as Laurent series in `1/m`.
//!
//! A member of the `n`-family is a sequence of parts, each either a large
//! part `m/n - p` (offset `p >= 0`) or a small part `s >= 1`. Members have
//! exactly `n` large parts and the small parts add up to the total offset,
//! so the parts sum to `m`. The offset budget bounds that total.
//!
//! Every term is taken relative to `m!/(2m)! * ((2m/n)!/(m/n)!)^n`. A large
//! part with offset `p` then contributes `prod_{j<p} 1/(2(2m/n - 2j - 1))`,
//! which is `O(m^-p)`, and a small part `s` contributes `(2s)!/s!`.
//!
//! For the connected formulas the first part of a member plays the role of
//! the outer summation index and the remaining parts form the composition
//! inside the symbol `<C>`, whose first `k` parts carry the leg weights.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::laurent::LaurentSeries;
use super::stirling::{loggamma_ratio_series, GammaFactor};
use crate::counts::formulas::{ExplicitFormula, SumGroup};
use crate::exact::{binomial, factorial, int_rat, part_weight, rat, Composition, ExactRat, Polynomial};
use crate::{Error, Result};

/// Which parts of the composition scale with `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// One part close to `m`.
    Principal,
    /// `n >= 2` parts close to `m/n`.
    Centered(u32),
}

impl FamilyKind {
    /// `1` gives the principal family, `n >= 2` the centered one.
    pub fn from_index(n: u32) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidArgument("family index must be at least 1".into())),
            1 => Ok(FamilyKind::Principal),
            n => Ok(FamilyKind::Centered(n)),
        }
    }

    pub fn large_parts(&self) -> u32 {
        match *self {
            FamilyKind::Principal => 1,
            FamilyKind::Centered(n) => n,
        }
    }
}

/// The exact formula whose terms are expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyFormula {
    /// Connected vacuum diagrams, `m! sum (-1)^(L+1)/L F(c)`.
    Vacuum,
    /// Connected diagrams with `N = 1..=5` external pairs.
    Connected(u32),
}

impl FamilyFormula {
    pub fn from_legs(legs: u32) -> Self {
        if legs == 0 {
            FamilyFormula::Vacuum
        } else {
            FamilyFormula::Connected(legs)
        }
    }

    pub fn legs(&self) -> u32 {
        match *self {
            FamilyFormula::Vacuum => 0,
            FamilyFormula::Connected(legs) => legs,
        }
    }
}

/// One part of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    /// `m/n - offset`.
    Large(u32),
    /// A fixed part.
    Small(u32),
}

impl Part {
    /// The concrete part for order `m` in the `n`-family, if positive.
    pub fn value(&self, m: u64, n: u32) -> Option<u64> {
        match *self {
            Part::Small(s) => Some(u64::from(s)),
            Part::Large(p) => {
                let n = u64::from(n);
                if !m.is_multiple_of(n) {
                    return None;
                }
                (m / n).checked_sub(u64::from(p)).filter(|&v| v > 0)
            }
        }
    }
}

/// A family together with its offset budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionFamily {
    pub kind: FamilyKind,
    pub offset_budget: u32,
}

impl CompositionFamily {
    pub fn new(kind: FamilyKind, offset_budget: u32) -> Self {
        CompositionFamily { kind, offset_budget }
    }

    /// Every member, ordered by total offset.
    pub fn members(&self) -> Vec<Vec<Part>> {
        let n = self.kind.large_parts() as usize;
        let mut out = Vec::new();
        for total in 0..=self.offset_budget {
            let mut prefix = Vec::new();
            extend_members(n, total, total, &mut prefix, &mut out);
        }
        out
    }

    /// The concrete composition of `m` for a member, if all parts are positive.
    pub fn resolve(&self, member: &[Part], m: u64) -> Option<Composition> {
        let n = self.kind.large_parts();
        let parts = member
            .iter()
            .map(|p| p.value(m, n).and_then(|v| u32::try_from(v).ok()))
            .collect::<Option<Vec<_>>>()?;
        let c = Composition::new(parts).ok()?;
        (u64::from(c.sum()) == m).then_some(c)
    }
}

fn extend_members(
    large_left: usize,
    offset_left: u32,
    small_left: u32,
    prefix: &mut Vec<Part>,
    out: &mut Vec<Vec<Part>>,
) {
    if large_left == 0 && offset_left == 0 && small_left == 0 {
        out.push(prefix.clone());
        return;
    }
    if large_left > 0 {
        // the last large part takes whatever offset remains
        let range = if large_left == 1 { offset_left..=offset_left } else { 0..=offset_left };
        for p in range {
            prefix.push(Part::Large(p));
            extend_members(large_left - 1, offset_left - p, small_left, prefix, out);
            prefix.pop();
        }
    }
    for s in 1..=small_left {
        prefix.push(Part::Small(s));
        extend_members(large_left, offset_left, small_left - s, prefix, out);
        prefix.pop();
    }
}

/// How the ratio contributed by a large part is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LargePartExpansion {
    /// As the rational function `prod_{j<p} 1/(2(2m/n - 2j - 1))`.
    #[default]
    Rational,
    /// Through the Stirling series of the four Gamma functions involved.
    Stirling,
}

/// A factor applied to every series in a DP transition.
#[derive(Clone, Debug)]
enum Factor {
    Scalar(ExactRat),
    Series(LaurentSeries),
}

impl Factor {
    fn apply(&self, s: &LaurentSeries, cap: i64) -> LaurentSeries {
        match self {
            Factor::Scalar(c) => s.scale(c),
            Factor::Series(f) => f.mul(s).truncated(cap),
        }
    }
}

/// Precomputed per-part data for one family at a fixed precision cap.
pub(crate) struct FamilyTables {
    n: u32,
    budget: usize,
    /// Absolute precision kept for intermediate sums.
    cap: i64,
    /// Precision of exact polynomial inputs; large enough never to bind.
    wide: i64,
    m: LaurentSeries,
    large_value: Vec<LaurentSeries>,
    large_ratio: Vec<LaurentSeries>,
    small_ratio: Vec<ExactRat>,
}

impl FamilyTables {
    pub(crate) fn new(
        kind: FamilyKind,
        budget: u32,
        cap: i64,
        expansion: LargePartExpansion,
    ) -> Result<Self> {
        let n = kind.large_parts();
        let budget = budget as usize;
        let wide = cap + 24;
        let inv_n = rat(1, i64::from(n));
        let large_value = (0..=budget)
            .map(|p| LaurentSeries::affine(&inv_n, &rat(-(p as i64), 1), wide))
            .collect();
        let large_ratio = (0..=budget)
            .map(|p| large_part_ratio(n, p as u32, cap, expansion))
            .collect::<Result<Vec<_>>>()?;
        let small_ratio = (0..=budget)
            .map(|s| if s == 0 { ExactRat::zero() } else { int_rat(part_weight(s as u32)) })
            .collect();
        Ok(FamilyTables {
            n,
            budget,
            cap,
            wide,
            m: LaurentSeries::affine(&ExactRat::one(), &ExactRat::zero(), wide),
            large_value,
            large_ratio,
            small_ratio,
        })
    }

    fn idx(&self, nl: usize, po: usize, ps: usize) -> usize {
        (nl * (self.budget + 1) + po) * (self.budget + 1) + ps
    }

    fn states(&self) -> usize {
        (self.n as usize + 1) * (self.budget + 1) * (self.budget + 1)
    }

    /// Evaluates a polynomial at a Laurent argument.
    fn poly_at(&self, p: &Polynomial, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(self.wide);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&LaurentSeries::constant(c.clone(), self.wide)).truncated(self.wide);
        }
        acc
    }

    /// `binom(2x + i, i) - 1`.
    fn leg_weight_series(&self, i: u32, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::one(self.wide);
        for j in 1..=i {
            let lin = self.poly_at(&Polynomial::linear(rat(2, j.into()), rat(1, 1)), x);
            acc = acc.mul(&lin).truncated(self.wide);
        }
        acc.sub(&LaurentSeries::one(self.wide))
    }

    fn leg_weight_scalar(i: u32, s: u32) -> ExactRat {
        int_rat(binomial(u64::from(2 * s + i), u64::from(i)) - 1)
    }

    /// `w(x, m) * (N_x^(N)/N! - N_x^(N-1)/(N-1)!) / (2x)!` at a Laurent argument.
    fn group_weight_series(&self, g: &SumGroup, legs: u32, x: &LaurentSeries) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::constant(
            g.scale.clone() / int_rat(factorial(u64::from(legs))),
            self.wide,
        );
        for j in 0..legs {
            let lin = self.poly_at(&Polynomial::from_ints(&[i64::from(j), 2]), x);
            acc = acc.mul(&lin).truncated(self.wide);
        }
        if g.m_minus_n {
            acc = acc.mul(&self.m.sub(x)).truncated(self.wide);
        }
        for p in &g.numerator {
            acc = acc.mul(&self.poly_at(p, x)).truncated(self.wide);
        }
        for p in &g.denominator {
            acc = acc.mul(&self.poly_at(p, x).inverse()?).truncated(self.wide);
        }
        Ok(acc)
    }

    /// `LG[nl][po]`: ordered large-part offsets summing to `po`.
    fn large_sequences(&self) -> Vec<Vec<Option<LaurentSeries>>> {
        let (n, b) = (self.n as usize, self.budget);
        let mut lg = vec![vec![None; b + 1]; n + 1];
        lg[0][0] = Some(LaurentSeries::one(self.cap));
        for nl in 1..=n {
            for po in 0..=b {
                let mut acc: Option<LaurentSeries> = None;
                for p in 0..=po {
                    if let Some(prev) = &lg[nl - 1][po - p] {
                        let term = self.large_ratio[p].mul(prev).truncated(self.cap);
                        acc = Some(match acc {
                            Some(a) => a.add(&term),
                            None => term,
                        });
                    }
                }
                lg[nl][po] = acc;
            }
        }
        lg
    }

    /// `SM[j][ps]`: compositions of `ps` into `j` parts weighted by `prod (2s)!/s!`.
    fn small_sequences(&self) -> Vec<Vec<ExactRat>> {
        let b = self.budget;
        let mut sm = vec![vec![ExactRat::zero(); b + 1]; b + 1];
        sm[0][0] = ExactRat::one();
        for j in 1..=b {
            for ps in 1..=b {
                let mut acc = ExactRat::zero();
                for s in 1..=ps {
                    acc += &self.small_ratio[s] * &sm[j - 1][ps - s];
                }
                sm[j][ps] = acc;
            }
        }
        sm
    }

    /// Sum of all member terms of the vacuum formula.
    fn vacuum_sum(&self) -> LaurentSeries {
        let n = self.n as usize;
        let lg = self.large_sequences();
        let sm = self.small_sequences();
        let mut total = LaurentSeries::zero(self.cap);
        for p in 0..=self.budget {
            let Some(large) = &lg[n][p] else { continue };
            let mut c = ExactRat::zero();
            for (j, row) in sm.iter().enumerate() {
                let len = (n + j) as i64;
                let sign = if len % 2 == 1 { 1 } else { -1 };
                c += &row[p] * int_rat(binomial((n + j) as u64, n as u64)) * rat(sign, len);
            }
            total.add_assign(&large.scale(&c));
        }
        total
    }

    /// Sum of all member terms of one group of a connected formula.
    fn group_sum(&self, g: &SumGroup, legs: u32) -> Result<LaurentSeries> {
        let (n, b) = (self.n as usize, self.budget);
        let lg = self.large_sequences();
        let sm = self.small_sequences();
        let k = g.symbol.len();

        // tails: parts after the leg-weighted head, with the length-dependent sign and binomial
        let mut state: Vec<Option<LaurentSeries>> = vec![None; self.states()];
        for nl in 0..=n {
            for po in 0..=b {
                let Some(large) = &lg[nl][po] else { continue };
                for ps in 0..=b {
                    let mut rho = ExactRat::zero();
                    for (j, row) in sm.iter().enumerate() {
                        if row[ps].is_zero() {
                            continue;
                        }
                        let len = (k + nl + j) as u64;
                        let sign = if len.is_multiple_of(2) { 1 } else { -1 };
                        let w = binomial(len, k as u64) * binomial((nl + j) as u64, nl as u64);
                        rho += &row[ps] * int_rat(w * sign);
                    }
                    if !rho.is_zero() {
                        state[self.idx(nl, po, ps)] = Some(large.scale(&rho));
                    }
                }
            }
        }

        // head positions, last to first
        for &leg in g.symbol.indices().iter().rev() {
            let large: Vec<Factor> = (0..=b)
                .map(|p| {
                    let f = self.leg_weight_series(leg, &self.large_value[p]);
                    Factor::Series(f.mul(&self.large_ratio[p]).truncated(self.cap))
                })
                .collect();
            let small: Vec<Factor> = (0..=b)
                .map(|s| {
                    if s == 0 {
                        Factor::Scalar(ExactRat::zero())
                    } else {
                        Factor::Scalar(Self::leg_weight_scalar(leg, s as u32) * &self.small_ratio[s])
                    }
                })
                .collect();
            state = self.prepend(&state, &large, &small);
        }

        // first part: the outer summation index
        let mut total = LaurentSeries::zero(self.cap);
        for p in 0..=b {
            let mut acc: Option<LaurentSeries> = None;
            for q in p..=b {
                if let Some(s) = &state[self.idx(n - 1, q - p, q)] {
                    acc = Some(match acc {
                        Some(a) => a.add(s),
                        None => s.clone(),
                    });
                }
            }
            let Some(rest) = acc else { continue };
            let weight = self
                .group_weight_series(g, legs, &self.large_value[p])?
                .mul(&self.large_ratio[p])
                .truncated(self.cap + i64::from(legs) + 2);
            total.add_assign(&weight.mul(&rest).truncated(self.cap));
        }
        for s in 1..=b {
            let mut acc: Option<LaurentSeries> = None;
            for q in s..=b {
                if let Some(st) = &state[self.idx(n, q, q - s)] {
                    acc = Some(match acc {
                        Some(a) => a.add(st),
                        None => st.clone(),
                    });
                }
            }
            let Some(rest) = acc else { continue };
            let x = LaurentSeries::constant(rat(s as i64, 1), self.wide);
            let w = self.group_weight_series(g, legs, &x)?.scale(&self.small_ratio[s]);
            total.add_assign(&w.mul(&rest).truncated(self.cap));
        }
        Ok(total)
    }

    /// One head position: `new[state] = sum_part factor(part) * old[state - part]`.
    fn prepend(
        &self,
        old: &[Option<LaurentSeries>],
        large: &[Factor],
        small: &[Factor],
    ) -> Vec<Option<LaurentSeries>> {
        let (n, b) = (self.n as usize, self.budget);
        let targets: Vec<(usize, usize, usize)> = (0..=n)
            .flat_map(|nl| (0..=b).flat_map(move |po| (0..=b).map(move |ps| (nl, po, ps))))
            .collect();
        targets
            .par_iter()
            .map(|&(nl, po, ps)| {
                let mut acc: Option<LaurentSeries> = None;
                let mut push = |t: LaurentSeries| match &mut acc {
                    Some(a) => a.add_assign(&t),
                    None => acc = Some(t),
                };
                if nl > 0 {
                    for (p, f) in large.iter().enumerate().take(po + 1) {
                        if let Some(s) = &old[self.idx(nl - 1, po - p, ps)] {
                            push(f.apply(s, self.cap));
                        }
                    }
                }
                for (s, f) in small.iter().enumerate().take(ps + 1).skip(1) {
                    if let Some(st) = &old[self.idx(nl, po, ps - s)] {
                        push(f.apply(st, self.cap));
                    }
                }
                acc
            })
            .collect()
    }

    /// Term of a single member, computed directly from its parts.
    fn member_term(&self, member: &[Part], formula: Option<&ExplicitFormula>) -> Result<LaurentSeries> {
        let ratio = |part: &Part| match *part {
            Part::Large(p) => self.large_ratio[p as usize].clone(),
            Part::Small(s) => LaurentSeries::constant(self.small_ratio[s as usize].clone(), self.wide),
        };
        let value = |part: &Part| match *part {
            Part::Large(p) => self.large_value[p as usize].clone(),
            Part::Small(s) => LaurentSeries::constant(rat(s.into(), 1), self.wide),
        };
        let mut product = LaurentSeries::one(self.wide);
        for part in member {
            product = product.mul(&ratio(part)).truncated(self.cap + 16);
        }
        let Some(formula) = formula else {
            let len = member.len() as i64;
            return Ok(product.scale(&rat(if len % 2 == 1 { 1 } else { -1 }, len)).truncated(self.cap));
        };
        let (first, rest) = member.split_first().expect("members are non-empty");
        let x = value(first);
        let mut weight = LaurentSeries::zero(self.wide);
        for g in formula.groups() {
            let k = g.symbol.len();
            if rest.len() < k {
                continue;
            }
            let sign = if rest.len() % 2 == 0 { 1 } else { -1 };
            let mut w = self.group_weight_series(g, formula.legs(), &x)?;
            w = w.scale(&int_rat(binomial(rest.len() as u64, k as u64) * sign));
            for (leg, part) in g.symbol.indices().iter().zip(rest) {
                let f = match *part {
                    Part::Small(s) => LaurentSeries::constant(Self::leg_weight_scalar(*leg, s), self.wide),
                    Part::Large(_) => self.leg_weight_series(*leg, &value(part)),
                };
                w = w.mul(&f).truncated(self.wide);
            }
            weight = weight.add(&w);
        }
        Ok(weight.mul(&product).truncated(self.cap))
    }

    /// Sum over all members of the family, using the factorized recursion.
    pub(crate) fn family_sum(&self, formula: &FamilyFormula) -> Result<LaurentSeries> {
        match formula {
            FamilyFormula::Vacuum => Ok(self.vacuum_sum()),
            FamilyFormula::Connected(legs) => {
                let f = ExplicitFormula::for_legs(*legs)?;
                let mut total = LaurentSeries::zero(self.cap);
                for g in f.groups() {
                    total.add_assign(&self.group_sum(g, *legs)?);
                }
                Ok(total)
            }
        }
    }

    /// Sum over all members of the family, one member at a time.
    pub(crate) fn family_sum_by_member(&self, formula: &FamilyFormula) -> Result<LaurentSeries> {
        let explicit = match formula {
            FamilyFormula::Vacuum => None,
            FamilyFormula::Connected(legs) => Some(ExplicitFormula::for_legs(*legs)?),
        };
        let family = CompositionFamily::new(
            FamilyKind::from_index(self.n)?,
            self.budget as u32,
        );
        let mut total = LaurentSeries::zero(self.cap);
        for member in family.members() {
            total.add_assign(&self.member_term(&member, explicit.as_ref())?);
        }
        Ok(total)
    }
}

/// Expansion of `((2x-2p)!/(x-p)!) / ((2x)!/x!)` with `x = m/n`, known to absolute precision `cap`.
pub fn large_part_ratio(n: u32, p: u32, cap: i64, expansion: LargePartExpansion) -> Result<LaurentSeries> {
    match expansion {
        LargePartExpansion::Rational => {
            let mut acc = LaurentSeries::one(cap + 2);
            for j in 0..p {
                let lin = LaurentSeries::affine(&rat(4, n.into()), &rat(-2 * (2 * i64::from(j) + 1), 1), cap + 2);
                acc = acc.mul(&lin.inverse()?);
            }
            Ok(acc.truncated(cap))
        }
        LargePartExpansion::Stirling => {
            let (s1, s2) = (rat(1, n.into()), rat(2, n.into()));
            let p = i64::from(p);
            let factors = [
                GammaFactor::new(s2.clone(), 1 - 2 * p, 1),
                GammaFactor::new(s1.clone(), 1, 1),
                GammaFactor::new(s1, 1 - p, -1),
                GammaFactor::new(s2, 1, -1),
            ];
            let len = (cap - p).max(1) as usize;
            let (series, pre) = loggamma_ratio_series(&factors, len)?;
            if !pre.base.is_one() || !pre.radicand.is_one() || pre.sign < 0 {
                return Err(Error::NonCancelling(format!("large-part ratio has prefactor {pre}")));
            }
            Ok(series.scale(&pre.scalar).shift(-pre.m_power).truncated(cap))
        }
    }
}

/// Expansion of `m!/(2m)! * ((2m/n)!/(m/n)!)^n`, the common factor of the `n`-family.
pub fn centered_base(n: u32, order: usize) -> Result<(LaurentSeries, super::prefactor::AsymptoticPrefactor)> {
    let n_i = i64::from(n);
    let factors = [
        GammaFactor::new(rat(1, 1), 1, 1),
        GammaFactor::new(rat(2, 1), 1, -1),
        GammaFactor::new(rat(2, n_i), 1, n_i),
        GammaFactor::new(rat(1, n_i), 1, -n_i),
    ];
    loggamma_ratio_series(&factors, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_counts() {
        // principal, budget 2: (m), (m-1,1), (1,m-1), (m-2,2), (2,m-2), (m-2,1,1), (1,m-2,1), (1,1,m-2)
        let fam = CompositionFamily::new(FamilyKind::Principal, 2);
        assert_eq!(fam.members().len(), 8);
        let fam = CompositionFamily::new(FamilyKind::Centered(2), 1);
        // (a,b), and offset 1 on either large part with the small 1 in one of three slots
        assert_eq!(fam.members().len(), 1 + 2 * 3);
    }

    #[test]
    fn members_resolve_to_compositions() {
        for kind in [FamilyKind::Principal, FamilyKind::Centered(2), FamilyKind::Centered(3)] {
            let fam = CompositionFamily::new(kind, 4);
            let m = 24;
            for member in fam.members() {
                let c = fam.resolve(&member, m).expect("member resolves");
                assert_eq!(u64::from(c.sum()), m);
            }
        }
        let fam = CompositionFamily::new(FamilyKind::Centered(3), 2);
        assert!(fam.resolve(&fam.members()[0], 25).is_none());
    }

    #[test]
    fn rational_and_stirling_large_parts_agree() {
        for n in 1..=4 {
            for p in 0..=5 {
                let a = large_part_ratio(n, p, 10, LargePartExpansion::Rational).unwrap();
                let b = large_part_ratio(n, p, 10, LargePartExpansion::Stirling).unwrap();
                for e in 0..10 {
                    assert_eq!(a.coeff(e), b.coeff(e), "n={n} p={p} t^{e}");
                }
                assert_eq!(a.precision(), 10);
                assert_eq!(b.precision(), 10);
            }
        }
    }

    #[test]
    fn recursion_matches_member_enumeration() {
        for n in 1..=3 {
            for legs in 0..=5 {
                let kind = FamilyKind::from_index(n).unwrap();
                let tables = FamilyTables::new(kind, 3, 5, LargePartExpansion::Rational).unwrap();
                let formula = FamilyFormula::from_legs(legs);
                let fast = tables.family_sum(&formula).unwrap();
                let slow = tables.family_sum_by_member(&formula).unwrap();
                for e in -6..5 {
                    assert_eq!(fast.coeff(e), slow.coeff(e), "n={n} N={legs} t^{e}");
                }
            }
        }
    }
}
