//! `feyncount`: exact connected Wick contraction counts, cross-checks and
//! asymptotic expansions from the command line.
//!
//! Exit status: 0 when every check passes, 1 on a mismatch, 2 on a usage
//! error or a refused computation.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{AsymArgs, CountArgs, FamilyArg, MethodArg, Outcome, TableArgs, VerifyArgs};
use output::{Format, Sink};

#[derive(Parser)]
#[command(name = "feyncount", version, about = "Count connected Wick contractions exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "FEYNCOUNT_FORMAT", default_value = "plain")]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Leave the generation timestamp out of json and plain output.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Largest number of permutations the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = feyncount::oracle::DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads for the oracle and the asymptotic recursion.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One connected count N_c,m^(N).
    Count {
        /// Number of external pairs.
        #[arg(long = "N")]
        legs: u32,
        /// Perturbative order.
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "explicit")]
        method: MethodArg,
        /// Also report N_c,m^(N) / (2^m m!).
        #[arg(long)]
        normalized: bool,
        /// Truncation order in x for the series route (defaults to N).
        #[arg(long, requires = "y_order")]
        x_order: Option<usize>,
        /// Truncation order in y for the series route (defaults to m).
        #[arg(long, requires = "x_order")]
        y_order: Option<usize>,
    },
    /// Counts for m = 0..=max-m with one method.
    Table {
        #[arg(long = "N")]
        legs: u32,
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_enum, default_value = "series-log")]
        method: MethodArg,
        #[arg(long)]
        normalized: bool,
    },
    /// Asymptotic contribution of one composition family.
    Asym {
        #[arg(long = "N")]
        legs: u32,
        /// Family index: 1 is the principal family, n >= 2 the n-nomial centered one.
        #[arg(long)]
        n: u32,
        /// Number of correction coefficients.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Compare with the published coefficients.
        #[arg(long)]
        check_paper: bool,
        #[arg(long, value_enum, default_value = "tabulated")]
        family: FamilyArg,
    },
    /// Cross-validates the counting routes against each other.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_m: u32,
        #[arg(long = "max-N", default_value_t = 5)]
        max_legs: u32,
        /// Include the brute-force oracle for every case within --budget.
        #[arg(long)]
        oracle: bool,
    },
}

fn run(cli: Cli) -> feyncount::Result<(String, Outcome)> {
    let sink = Sink {
        format: cli.format,
        output: cli.output.clone(),
        timestamp: !cli.no_timestamp,
    };
    let (text, outcome) = match cli.command {
        Command::Count { legs, m, method, normalized, x_order, y_order } => commands::count(
            &CountArgs {
                legs,
                m,
                method,
                normalized,
                budget: cli.budget,
                orders: x_order.zip(y_order),
            },
            &sink,
        )?,
        Command::Table { legs, max_m, method, normalized } => commands::table(
            &TableArgs { legs, max_m, method, normalized, budget: cli.budget },
            &sink,
        )?,
        Command::Asym { legs, n, order, check_paper, family } => commands::asym(
            &AsymArgs { legs, n, order, check_paper, family },
            &sink,
        )?,
        Command::Verify { max_m, max_legs, oracle } => commands::verify(
            &VerifyArgs { max_m, max_legs, oracle, budget: cli.budget },
            &sink,
        )?,
    };
    sink.emit(&text)
        .map_err(|e| feyncount::Error::InvalidArgument(format!("cannot write output: {e}")))?;
    Ok((text, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((_, Outcome::Pass)) => ExitCode::SUCCESS,
        Ok((_, Outcome::Mismatch)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
