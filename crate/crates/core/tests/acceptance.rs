//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use feyncount::asymptotics::{contribution, evaluate_truncated, Enclosure};
use feyncount::counts::{
    connected_explicit, connected_general, normalized_count, vacuum_connected, VacuumMethod,
};
use feyncount::exact::{
    c_symbol, c_symbol_composition_sum, c_symbol_generalized, factorial, h_multi, rat, HMultiMethod,
    MultiIndex,
};
use feyncount::oracle::{brute_force_connected, DEFAULT_BUDGET};
use feyncount::reference::{compare, reference_cells};
use feyncount::series::vacuum_series;
use feyncount::ExactRat;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_cases() -> Vec<(u32, u32)> {
    let mut cases = Vec::new();
    for legs in 0..=5u32 {
        for m in 0..=10u32 {
            if factorial(u64::from(2 * m + legs)) <= BigInt::from(DEFAULT_BUDGET) {
                cases.push((m, legs));
            }
        }
    }
    cases
}

fn table_reproduction() -> Check {
    let start = Instant::now();
    let cells = reference_cells().map_err(|e| e.to_string())?;
    ensure(cells.len() == 24, || format!("expected 24 published rows, found {}", cells.len()))?;
    let mut coefficients = 0;
    for cell in &cells {
        let c = contribution(cell.legs, cell.family, 6).map_err(|e| e.to_string())?;
        let cmp = compare(&c, cell);
        ensure(cmp.prefactor_equal, || {
            format!("N={} n={}: prefactor {} != {}", cell.legs, cell.family, c.prefactor, cell.prefactor)
        })?;
        for (k, ours, theirs, equal) in &cmp.coefficients {
            ensure(*equal, || format!("N={} n={} c{k}: {ours} != {theirs}", cell.legs, cell.family))?;
        }
        ensure(cmp.coefficients.len() == 6, || format!("N={} n={}: short row", cell.legs, cell.family))?;
        coefficients += cmp.coefficients.len();
    }
    let principal = &cells.iter().find(|c| c.legs == 0 && c.family == 1).unwrap().printed;
    let expected = ["1/2", "3/4", "19/8", "191/16", "2551/32", "41935/64"];
    ensure(principal.iter().map(|r| r.to_string()).eq(expected), || {
        format!("vacuum principal row reads {principal:?}")
    })?;
    let n4 = &cells.iter().find(|c| c.legs == 5 && c.family == 4).unwrap().printed;
    ensure(n4[0] == rat(492189, 15752), || format!("N=5 n=4 c1 reads {}", n4[0]))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("24 prefactors and {coefficients} coefficients exact in {:.1}s", elapsed.as_secs_f64()))
}

fn figure_count() -> Check {
    let v = normalized_count(3, 2).map_err(|e| e.to_string())?;
    ensure(v == rat(6, 1), || format!("normalized_count(3, 2) = {v}"))?;
    Ok("normalized_count(3, 2) = 6".into())
}

fn triple_agreement() -> Check {
    let mut n = 0;
    for legs in 1..=5 {
        for m in 0..=10 {
            let a = connected_explicit(legs, m).map_err(|e| e.to_string())?;
            let b = connected_general(legs, m).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("N={legs} m={m}: explicit {a} != series {b}"))?;
            n += 1;
        }
    }
    let cases = oracle_cases();
    for required in [(5, 0), (4, 1), (3, 2), (2, 3), (1, 4)] {
        ensure(cases.contains(&required), || format!("(m, N) = {required:?} not covered"))?;
    }
    for &(m, legs) in &cases {
        let o = brute_force_connected(m, legs, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let s = connected_general(legs, m).map_err(|e| e.to_string())?;
        ensure(o == s, || format!("N={legs} m={m}: oracle {o} != series {s}"))?;
        if legs >= 1 {
            let e = connected_explicit(legs, m).map_err(|e| e.to_string())?;
            ensure(o == e, || format!("N={legs} m={m}: oracle {o} != explicit {e}"))?;
        } else {
            let e = vacuum_connected(m, VacuumMethod::CompositionSum);
            ensure(o == e, || format!("m={m}: oracle {o} != composition sum {e}"))?;
        }
    }
    Ok(format!("{n} explicit/series pairs, {} oracle cases", cases.len()))
}

fn vacuum_consistency() -> Check {
    let log_g = vacuum_series(12).log().map_err(|e| e.to_string())?;
    for m in 0..=12u32 {
        let a = vacuum_connected(m, VacuumMethod::CompositionSum);
        let b = vacuum_connected(m, VacuumMethod::Recurrence);
        let c = if m == 0 {
            ExactRat::from_integer(BigInt::from(1))
        } else {
            log_g.coeff(m as usize) * ExactRat::from_integer(factorial(u64::from(m)))
        };
        ensure(a == b && ExactRat::from_integer(a.clone()) == c, || {
            format!("m={m}: composition {a}, recurrence {b}, log {c}")
        })?;
    }
    for (m, expected) in [(1, 2), (2, 20)] {
        let o = brute_force_connected(m, 0, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(o == BigInt::from(expected), || format!("oracle D_c,{m} = {o}"))?;
    }
    Ok("three routes agree for m <= 12; oracle gives 2 and 20".into())
}

fn symbol_identities() -> Check {
    let mut n_c = 0;
    let mut n_w = 0;
    for m in 1..=14u32 {
        for n in 1..m {
            let a = c_symbol(n, m).map_err(|e| e.to_string())?;
            let b = c_symbol_composition_sum(n, m).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("C_{n}^{m}: via h {a}, composition sum {b}"))?;
            n_c += 1;
        }
        let one = MultiIndex::new(vec![1]).map_err(|e| e.to_string())?;
        for n in 1..=m {
            let w = c_symbol_generalized(n, m, &one).map_err(|e| e.to_string())?;
            let c = c_symbol(n, m).map_err(|e| e.to_string())?;
            ensure(w == BigInt::from(2 * (m - n)) * &c, || format!("<C_{n}^{m}>_1 = {w}"))?;
            n_w += 1;
        }
    }
    let indices = MultiIndex::all_up_to(4, 5);
    let mut n_h = 0;
    for idx in &indices {
        for m in 0..=10 {
            let a = h_multi(m, idx, HMultiMethod::Convolution).map_err(|e| e.to_string())?;
            let b = h_multi(m, idx, HMultiMethod::Simplified).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("H_{m}^{:?}: {a} != {b}", idx.indices()))?;
            n_h += 1;
        }
    }
    Ok(format!("{n_c} C identities, {n_w} weighted, {n_h} multi-index ({} indices)", indices.len()))
}

fn normalized_sequence() -> Check {
    let expected = [1, 2, 10, 74, 706, 8162];
    for (m, &e) in expected.iter().enumerate() {
        let m = m as u32;
        let v = normalized_count(1, m).map_err(|e| e.to_string())?;
        ensure(v == rat(e, 1), || format!("m={m}: normalized {v}, expected {e}"))?;
        if m <= 4 {
            let o = brute_force_connected(m, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let scaled = ExactRat::new(o.clone(), (BigInt::from(1) << m) * factorial(u64::from(m)));
            ensure(scaled == rat(e, 1), || format!("m={m}: oracle {o} normalizes to {scaled}"))?;
        }
    }
    Ok("1, 2, 10, 74, 706, 8162 (oracle through m = 4)".into())
}

fn regime() -> Check {
    let principal = contribution(0, 1, 6).map_err(|e| e.to_string())?;
    let binomial = contribution(0, 2, 6).map_err(|e| e.to_string())?;
    let relative = |m: u32| -> Result<Enclosure, String> {
        let exact = ExactRat::from_integer(vacuum_connected(m, VacuumMethod::Recurrence));
        let approx = evaluate_truncated(std::slice::from_ref(&principal), u64::from(m), 6)
            .map_err(|e| e.to_string())?;
        let d = approx.distance_to(&exact);
        Ok(Enclosure { lower: d.lower / &exact, upper: d.upper / &exact })
    };
    let ms = [16, 20, 24, 28];
    let errs = ms.iter().map(|&m| relative(m)).collect::<Result<Vec<_>, _>>()?;
    for (w, pair) in errs.windows(2).zip(ms.windows(2)) {
        ensure(w[1].upper < w[0].lower, || {
            format!(
                "relative error at m={} not below m={}: {:.3e} vs {:.3e}",
                pair[1],
                pair[0],
                to_f64(&w[1].midpoint()),
                to_f64(&w[0].midpoint())
            )
        })?;
    }
    let exact = ExactRat::from_integer(vacuum_connected(24, VacuumMethod::Recurrence));
    let one = evaluate_truncated(std::slice::from_ref(&principal), 24, 6).map_err(|e| e.to_string())?;
    let two = evaluate_truncated(&[principal.clone(), binomial], 24, 6).map_err(|e| e.to_string())?;
    let (e1, e2) = (one.distance_to(&exact), two.distance_to(&exact));
    ensure(e2.upper < e1.lower, || {
        format!("m=24: error with n=2 {:.3e}, without {:.3e}", to_f64(&e2.midpoint()), to_f64(&e1.midpoint()))
    })?;
    let rel: Vec<String> = errs.iter().map(|e| format!("{:.2e}", to_f64(&e.midpoint()))).collect();
    Ok(format!(
        "relative errors {} at m = 16, 20, 24, 28; n=2 term cuts m=24 error {:.2e} -> {:.2e}",
        rel.join(", "),
        to_f64(&(e1.midpoint() / &exact)),
        to_f64(&(e2.midpoint() / &exact))
    ))
}

fn to_f64(r: &ExactRat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("table reproduction", table_reproduction),
        ("figure count", figure_count),
        ("triple-method agreement", triple_agreement),
        ("vacuum consistency", vacuum_consistency),
        ("symbol identities", symbol_identities),
        ("normalized N=1 sequence", normalized_sequence),
        ("asymptotic regime", regime),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
