use num_traits::ToPrimitive;

use feyncount::asymptotics::{
    contribution, evaluate_truncated, expand_family, family_terms, ExpansionOptions, FamilyFormula,
    FamilyKind, LargePartExpansion, Summation,
};
use feyncount::counts::connected_general;
use feyncount::exact::rat;
use feyncount::{Error, ExactRat};

fn subtracted(series: &feyncount::asymptotics::LaurentSeries, k: i64) -> ExactRat {
    -series.coeff(k)
}

#[test]
fn principal_vacuum_series() {
    let s = family_terms(FamilyKind::Principal, FamilyFormula::Vacuum, 6).unwrap();
    let expected = [(1, 2), (3, 4), (19, 8), (191, 16), (2551, 32), (41935, 64)];
    assert_eq!(s.coeff(0), rat(1, 1));
    for (k, &(p, q)) in expected.iter().enumerate() {
        assert_eq!(subtracted(&s, k as i64 + 1), rat(p, q), "t^{}", k + 1);
    }
}

#[test]
fn binomial_centered_vacuum_series() {
    let s = family_terms(FamilyKind::Centered(2), FamilyFormula::Vacuum, 6).unwrap();
    assert_eq!(subtracted(&s, 1), rat(33, 8));
    assert_eq!(subtracted(&s, 2), rat(1599, 128));
}

#[test]
fn one_leg_principal_repeats_vacuum() {
    let a = family_terms(FamilyKind::Principal, FamilyFormula::Vacuum, 6).unwrap();
    let b = family_terms(FamilyKind::Principal, FamilyFormula::Connected(1), 6).unwrap();
    for k in 0..=6 {
        assert_eq!(a.coeff(k), b.coeff(k));
    }
}

#[test]
fn published_examples() {
    let c = contribution(0, 3, 6).unwrap();
    assert_eq!(c.subtracted_coefficients()[..3], [rat(83, 6), rat(2023, 36), rat(540553, 648)]);
    let c = contribution(2, 1, 6).unwrap();
    let expected = [(1, 2), (7, 4), (35, 8), (315, 16), (4063, 32), (65875, 64)];
    let expected: Vec<ExactRat> = expected.iter().map(|&(p, q)| rat(p, q)).collect();
    assert_eq!(c.subtracted_coefficients(), expected);
    assert_eq!(c.prefactor.to_string(), "(2m)!*m*(2m-1)");
    let c = contribution(5, 4, 6).unwrap();
    assert_eq!(c.subtracted_coefficients()[0], rat(492189, 15752));
}

#[test]
fn per_member_sum_matches_factorized() {
    for legs in 0..=5 {
        for n in 1..=3 {
            let mut opts = ExpansionOptions::new(3);
            opts.check_stability = false;
            let fast = expand_family(FamilyKind::from_index(n).unwrap(), FamilyFormula::from_legs(legs), &opts)
                .unwrap();
            opts.summation = Summation::PerMember;
            let slow = expand_family(FamilyKind::from_index(n).unwrap(), FamilyFormula::from_legs(legs), &opts)
                .unwrap();
            assert_eq!(fast, slow, "N={legs} n={n}");
        }
    }
}

#[test]
fn stirling_and_rational_large_parts_agree() {
    for (legs, n) in [(0, 1), (2, 1), (3, 2), (4, 3)] {
        let mut opts = ExpansionOptions::new(4);
        let kind = FamilyKind::from_index(n).unwrap();
        let a = expand_family(kind, FamilyFormula::from_legs(legs), &opts).unwrap();
        opts.large_parts = LargePartExpansion::Stirling;
        let b = expand_family(kind, FamilyFormula::from_legs(legs), &opts).unwrap();
        assert_eq!(a, b, "N={legs} n={n}");
    }
}

#[test]
fn larger_offset_budget_changes_nothing() {
    for (legs, n) in [(0, 1), (1, 2), (5, 1)] {
        let kind = FamilyKind::from_index(n).unwrap();
        let base = expand_family(kind, FamilyFormula::from_legs(legs), &ExpansionOptions::new(5)).unwrap();
        let mut opts = ExpansionOptions::new(5);
        opts.offset_budget = Some(9);
        let wide = expand_family(kind, FamilyFormula::from_legs(legs), &opts).unwrap();
        assert_eq!(base.series, wide.series, "N={legs} n={n}");
    }
}

#[test]
fn every_series_starts_at_one() {
    for legs in 0..=5 {
        for n in 1..=4 {
            let c = contribution(legs, n, 2).unwrap();
            assert_eq!(c.series.val(), 0);
            assert_eq!(c.series.coeff(0), rat(1, 1), "N={legs} n={n}");
        }
    }
}

#[test]
fn principal_truncation_tracks_exact_counts() {
    for legs in 1..=5u32 {
        let c = contribution(legs, 1, 6).unwrap();
        let mut last = f64::INFINITY;
        for m in [20u32, 30, 40] {
            let exact = ExactRat::from_integer(connected_general(legs, m).unwrap());
            let approx = evaluate_truncated(std::slice::from_ref(&c), u64::from(m), 6).unwrap();
            assert!(approx.is_exact());
            let rel = ((approx.midpoint() - &exact) / &exact).to_f64().unwrap().abs();
            assert!(rel < last, "N={legs} m={m}: {rel:e} after {last:e}");
            last = rel;
        }
        assert!(last < 1e-4, "N={legs}: relative error {last:e} at m=40");
    }
}

#[test]
fn guards() {
    let c = contribution(0, 1, 6).unwrap();
    assert!(matches!(evaluate_truncated(&[c], 4, 6), Err(Error::Regime { .. })));
    let c = contribution(0, 3, 6).unwrap();
    assert!(matches!(evaluate_truncated(&[c], 25, 6), Err(Error::Divisibility { .. })));
    assert!(matches!(contribution(6, 1, 6), Err(Error::Unsupported(_))));
    assert!(matches!(contribution(0, 5, 6), Err(Error::Unsupported(_))));
}

#[test]
fn families_beyond_the_tables() {
    let s = family_terms(FamilyKind::Centered(5), FamilyFormula::Vacuum, 3).unwrap();
    assert_eq!(s.coeff(0), rat(1, 1));
}
