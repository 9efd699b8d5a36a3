use clap::ValueEnum;
use serde::Serialize;

use feyncount::asymptotics::{
    contribution, expand_family, AsymptoticContribution, ExpansionOptions, FamilyFormula,
    FamilyKind,
};
use feyncount::counts::{self, CountRecord, Method, VacuumMethod};
use feyncount::exact::{
    c_symbol, c_symbol_composition_sum, c_symbol_generalized, factorial, h_multi, HMultiMethod,
    MultiIndex,
};
use feyncount::reference::{compare, reference_cell};
use feyncount::series::connected_from_log;
use feyncount::{oracle, Error, ExactInt, ExactRat};

use crate::output::{csv, Format, Sink};

/// Whether every check in a command held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Mismatch
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Explicit,
    SeriesLog,
    Oracle,
    Recurrence,
    All,
}

impl MethodArg {
    fn methods(self, legs: u32) -> Vec<Method> {
        match self {
            MethodArg::Explicit => vec![Method::Explicit],
            MethodArg::SeriesLog => vec![Method::SeriesLog],
            MethodArg::Oracle => vec![Method::Oracle],
            MethodArg::Recurrence => vec![Method::Recurrence],
            MethodArg::All if legs == 0 => {
                vec![Method::Explicit, Method::SeriesLog, Method::Recurrence, Method::Oracle]
            }
            MethodArg::All => vec![Method::Explicit, Method::SeriesLog, Method::Oracle],
        }
    }
}

#[derive(Serialize)]
struct RecordJson {
    #[serde(rename = "N")]
    legs: u32,
    m: u32,
    method: String,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<String>,
}

#[derive(Serialize)]
struct Skipped {
    method: String,
    reason: String,
}

pub struct CountArgs {
    pub legs: u32,
    pub m: u32,
    pub method: MethodArg,
    pub normalized: bool,
    pub budget: u64,
    pub orders: Option<(usize, usize)>,
}

fn one_count(args: &CountArgs, legs: u32, m: u32, method: Method) -> feyncount::Result<CountRecord> {
    match (method, args.orders) {
        (Method::SeriesLog, Some((x, y))) => Ok(CountRecord {
            legs,
            m,
            method,
            value: connected_from_log(x, y)?.get(legs as usize, m as usize)?,
        }),
        _ => counts::count(legs, m, method, args.budget),
    }
}

fn record_json(r: &CountRecord, normalized: bool) -> RecordJson {
    RecordJson {
        legs: r.legs,
        m: r.m,
        method: r.method.to_string(),
        value: r.value.to_string(),
        normalized: normalized.then(|| r.normalized().to_string()),
    }
}

fn records_csv(records: &[CountRecord], normalized: bool) -> String {
    let mut header = vec!["N", "m", "method", "value"];
    if normalized {
        header.push("normalized");
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut row = vec![r.legs.to_string(), r.m.to_string(), r.method.to_string(), r.value.to_string()];
            if normalized {
                row.push(r.normalized().to_string());
            }
            row
        })
        .collect();
    csv(&header, &rows)
}

pub fn count(args: &CountArgs, sink: &Sink) -> feyncount::Result<(String, Outcome)> {
    if args.normalized && args.legs == 0 {
        return Err(Error::InvalidArgument(
            "--normalized needs N >= 1 (vacuum counts have no labeled legs)".into(),
        ));
    }
    let all = args.method == MethodArg::All;
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for method in args.method.methods(args.legs) {
        match one_count(args, args.legs, args.m, method) {
            Ok(r) => records.push(r),
            Err(e @ Error::BudgetExceeded { .. }) if all => skipped.push(Skipped {
                method: method.to_string(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    let agree = records.windows(2).all(|w| w[0].value == w[1].value);
    let verdict = if agree { "MATCH" } else { "MISMATCH" };
    let text = match sink.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                records: Vec<RecordJson>,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                skipped: Vec<Skipped>,
                #[serde(skip_serializing_if = "Option::is_none")]
                verdict: Option<&'static str>,
            }
            let body = Body {
                records: records.iter().map(|r| record_json(r, args.normalized)).collect(),
                skipped,
                verdict: all.then_some(verdict),
            };
            sink.json("count", &body)
        }
        Format::Csv => records_csv(&records, args.normalized),
        Format::Plain => {
            let mut out = String::new();
            if all {
                for r in &records {
                    out.push_str(&format!("{}: {}", r.method, r.value));
                    if args.normalized {
                        out.push_str(&format!(" (normalized {})", r.normalized()));
                    }
                    out.push('\n');
                }
                for s in &skipped {
                    out.push_str(&format!("{}: SKIPPED ({})\n", s.method, s.reason));
                }
                out.push_str(verdict);
                out.push('\n');
            } else {
                let r = &records[0];
                let v = if args.normalized { r.normalized().to_string() } else { r.value.to_string() };
                out.push_str(&v);
                out.push('\n');
            }
            sink.plain(out)
        }
    };
    Ok((text, Outcome::from_pass(agree)))
}

pub struct TableArgs {
    pub legs: u32,
    pub max_m: u32,
    pub method: MethodArg,
    pub normalized: bool,
    pub budget: u64,
}

pub fn table(args: &TableArgs, sink: &Sink) -> feyncount::Result<(String, Outcome)> {
    if args.method == MethodArg::All {
        return Err(Error::InvalidArgument("table takes a single method; use count --method all to compare".into()));
    }
    if args.normalized && args.legs == 0 {
        return Err(Error::InvalidArgument("--normalized needs N >= 1".into()));
    }
    let method = args.method.methods(args.legs)[0];
    let records = if method == Method::SeriesLog {
        // one logarithm serves the whole column
        let t = connected_from_log(args.legs as usize, args.max_m as usize)?;
        (0..=args.max_m)
            .map(|m| {
                Ok(CountRecord { legs: args.legs, m, method, value: t.get(args.legs as usize, m as usize)? })
            })
            .collect::<feyncount::Result<Vec<_>>>()?
    } else {
        (0..=args.max_m)
            .map(|m| counts::count(args.legs, m, method, args.budget))
            .collect::<feyncount::Result<Vec<_>>>()?
    };
    let text = match sink.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                records: Vec<RecordJson>,
            }
            let body = Body { records: records.iter().map(|r| record_json(r, args.normalized)).collect() };
            sink.json("table", &body)
        }
        Format::Csv => records_csv(&records, args.normalized),
        Format::Plain => {
            let mut out = String::new();
            for r in &records {
                let v = if args.normalized { r.normalized().to_string() } else { r.value.to_string() };
                out.push_str(&format!("{:>3}  {v}\n", r.m));
            }
            sink.plain(out)
        }
    };
    Ok((text, Outcome::Pass))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Cells N = 0..=5, n = 1..=4.
    Tabulated,
    /// Any N = 0..=5 and n >= 1.
    Custom,
}

pub struct AsymArgs {
    pub legs: u32,
    pub n: u32,
    pub order: usize,
    pub check_paper: bool,
    pub family: FamilyArg,
}

#[derive(Serialize)]
struct PrefactorJson {
    sign: i8,
    scalar: String,
    sqrt: String,
    base: String,
    factorial: bool,
    m_power: i64,
    factors: Vec<String>,
    text: String,
}

#[derive(Serialize)]
struct CellJson {
    k: usize,
    computed: String,
    published: String,
    equal: bool,
}

#[derive(Serialize)]
struct CheckJson {
    cells_equal: usize,
    cells: usize,
    prefactor_equal: bool,
    details: Vec<CellJson>,
}

pub fn asym(args: &AsymArgs, sink: &Sink) -> feyncount::Result<(String, Outcome)> {
    let c: AsymptoticContribution = match args.family {
        FamilyArg::Tabulated => contribution(args.legs, args.n, args.order)?,
        FamilyArg::Custom => expand_family(
            FamilyKind::from_index(args.n)?,
            FamilyFormula::from_legs(args.legs),
            &ExpansionOptions::new(args.order),
        )?,
    };
    let check = if args.check_paper {
        let cell = reference_cell(args.legs, args.n)?.ok_or_else(|| {
            Error::InvalidArgument(format!("no published row for N = {}, n = {}", args.legs, args.n))
        })?;
        let cmp = compare(&c, &cell);
        Some(CheckJson {
            cells_equal: cmp.equal_cells(),
            cells: cmp.coefficients.len(),
            prefactor_equal: cmp.prefactor_equal,
            details: cmp
                .coefficients
                .iter()
                .map(|(k, a, b, eq)| CellJson { k: *k, computed: a.to_string(), published: b.to_string(), equal: *eq })
                .collect(),
        })
    } else {
        None
    };
    let pass = check
        .as_ref()
        .is_none_or(|ch| ch.prefactor_equal && ch.cells_equal == ch.cells);
    let coefficients: Vec<String> = c.subtracted_coefficients().iter().map(ExactRat::to_string).collect();
    let p = &c.prefactor;
    let text = match sink.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                #[serde(rename = "N")]
                legs: u32,
                n: u32,
                order: usize,
                prefactor: PrefactorJson,
                series: &'static str,
                coefficients: Vec<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                check: Option<CheckJson>,
            }
            let body = Body {
                legs: args.legs,
                n: args.n,
                order: args.order,
                prefactor: PrefactorJson {
                    sign: p.sign,
                    scalar: p.scalar.to_string(),
                    sqrt: p.radicand.to_string(),
                    base: p.base.to_string(),
                    factorial: p.factorial,
                    m_power: p.m_power,
                    factors: p.factors.iter().map(|f| f.to_string()).collect(),
                    text: p.to_string(),
                },
                series: "1 - sum_k c_k / m^k",
                coefficients,
                check,
            };
            sink.json("asym", &body)
        }
        Format::Csv => {
            let mut header = vec!["N", "n", "k", "coefficient"];
            if check.is_some() {
                header.extend(["published", "equal"]);
            }
            let rows: Vec<Vec<String>> = coefficients
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let mut row = vec![args.legs.to_string(), args.n.to_string(), (i + 1).to_string(), v.clone()];
                    if let Some(ch) = &check {
                        match ch.details.get(i) {
                            Some(d) => row.extend([d.published.clone(), d.equal.to_string()]),
                            None => row.extend([String::new(), String::new()]),
                        }
                    }
                    row
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Plain => {
            let mut out = format!("prefactor: {p}\n");
            if coefficients.is_empty() {
                out.push_str("series: 1\n");
            } else {
                out.push_str("series: 1 - c1/m - c2/m^2 - ...\n");
                for (i, v) in coefficients.iter().enumerate() {
                    out.push_str(&format!("c{} = {v}\n", i + 1));
                }
            }
            if let Some(ch) = &check {
                for d in ch.details.iter().filter(|d| !d.equal) {
                    out.push_str(&format!("c{}: computed {} published {}\n", d.k, d.computed, d.published));
                }
                out.push_str(&format!(
                    "check: {}/{} cells equal, prefactor {}\n",
                    ch.cells_equal,
                    ch.cells,
                    if ch.prefactor_equal { "equal" } else { "differs" }
                ));
            }
            sink.plain(out)
        }
    };
    Ok((text, Outcome::from_pass(pass)))
}

pub struct VerifyArgs {
    pub max_m: u32,
    pub max_legs: u32,
    pub oracle: bool,
    pub budget: u64,
}

#[derive(Serialize)]
struct Group {
    name: &'static str,
    status: &'static str,
    cases: usize,
    skipped: usize,
    failures: Vec<String>,
}

impl Group {
    fn new(name: &'static str) -> Self {
        Group { name, status: "PASS", cases: 0, skipped: 0, failures: Vec::new() }
    }

    fn check(&mut self, label: String, result: feyncount::Result<bool>) {
        self.cases += 1;
        match result {
            Ok(true) => {}
            Ok(false) => self.failures.push(label),
            Err(e) => self.failures.push(format!("{label}: {e}")),
        }
    }

    fn finish(mut self) -> Self {
        if !self.failures.is_empty() {
            self.status = "FAIL";
        } else if self.cases == 0 {
            self.status = "SKIPPED";
        }
        self
    }
}

fn same(values: &[ExactInt]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

pub fn verify(args: &VerifyArgs, sink: &Sink) -> feyncount::Result<(String, Outcome)> {
    let series = connected_from_log(args.max_legs as usize, args.max_m as usize)?;
    let mut groups = Vec::new();

    let mut g = Group::new("explicit-vs-series");
    for legs in 1..=args.max_legs.min(5) {
        for m in 0..=args.max_m {
            let r = (|| Ok(counts::connected_explicit(legs, m)? == series.get(legs as usize, m as usize)?))();
            g.check(format!("N={legs} m={m}"), r);
        }
    }
    groups.push(g.finish());

    let mut g = Group::new("vacuum-routes");
    for m in 0..=args.max_m {
        let r = (|| {
            Ok(same(&[
                counts::vacuum_connected(m, VacuumMethod::CompositionSum),
                counts::vacuum_connected(m, VacuumMethod::Recurrence),
                series.get(0, m as usize)?,
            ]))
        })();
        g.check(format!("m={m}"), r);
    }
    groups.push(g.finish());

    let mut g = Group::new("symbol-identities");
    for m in 1..=args.max_m {
        for n in 1..m {
            let r = (|| Ok(c_symbol(n, m)? == c_symbol_composition_sum(n, m)?))();
            g.check(format!("C_{n}^{m} two ways"), r);
            let r = (|| {
                let one = MultiIndex::new(vec![1])?;
                Ok(c_symbol_generalized(n, m, &one)? == ExactInt::from(2 * (m - n)) * c_symbol(n, m)?)
            })();
            g.check(format!("<C_{n}^{m}>_1"), r);
        }
    }
    for idx in MultiIndex::all_up_to(4, 5) {
        for m in 1..=args.max_m.min(10) {
            let r = (|| {
                Ok(h_multi(m, &idx, HMultiMethod::Convolution)? == h_multi(m, &idx, HMultiMethod::Simplified)?)
            })();
            g.check(format!("H_{m}{idx}"), r);
        }
    }
    groups.push(g.finish());

    if args.oracle {
        let mut g = Group::new("oracle");
        for legs in 0..=args.max_legs {
            for m in 0..=args.max_m {
                if !oracle::within_budget(m, legs, args.budget) {
                    g.skipped += 1;
                    continue;
                }
                let r = (|| {
                    let brute = oracle::brute_force_connected(m, legs, args.budget)?;
                    let total = oracle::brute_force_total(m, legs, args.budget)?;
                    Ok(brute == series.get(legs as usize, m as usize)?
                        && total == factorial(u64::from(2 * m + legs)))
                })();
                g.check(format!("N={legs} m={m}"), r);
            }
        }
        groups.push(g.finish());
    }

    let pass = groups.iter().all(|g| g.status != "FAIL");
    let text = match sink.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                max_m: u32,
                #[serde(rename = "max_N")]
                max_legs: u32,
                groups: &'a [Group],
                verdict: &'static str,
            }
            let body = Body {
                max_m: args.max_m,
                max_legs: args.max_legs,
                groups: &groups,
                verdict: if pass { "PASS" } else { "FAIL" },
            };
            sink.json("verify", &body)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = groups
                .iter()
                .map(|g| vec![g.name.into(), g.status.into(), g.cases.to_string(), g.skipped.to_string(), g.failures.len().to_string()])
                .collect();
            csv(&["group", "status", "cases", "skipped", "failures"], &rows)
        }
        Format::Plain => {
            let mut out = String::new();
            for g in &groups {
                let noun = if g.cases == 1 { "case" } else { "cases" };
                out.push_str(&format!("{} {} ({} {noun}", g.status, g.name, g.cases));
                if g.skipped > 0 {
                    out.push_str(&format!(", {} skipped over budget", g.skipped));
                }
                out.push_str(")\n");
                for f in &g.failures {
                    out.push_str(&format!("  mismatch: {f}\n"));
                }
            }
            out.push_str(if pass { "overall: PASS\n" } else { "overall: FAIL\n" });
            sink.plain(out)
        }
    };
    Ok((text, Outcome::from_pass(pass)))
}
