//! `qix`: evaluate `Q^k_ℓ(ix)`, dump exact numerators and constants, build
//! Gram reports and run the verification suites.

mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use legendre_qix::eval::{q_ferrers, q_hobson};
use legendre_qix::exactpoly::{a0_closed, a0_sum, ferrers_numerator};
use legendre_qix::hypergeom::{MAX_SERIES_TERMS, q_asymptotic};
use legendre_qix::quadrature::{gram_matrix, inner_product, normalization_exact};
use legendre_qix::verify::{self, Suite};
use legendre_qix::{Error, LegendreIndex};

use report::{Emit, Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "qix", version, about = "Associated Legendre functions of the second kind on the imaginary axis")]
struct Cli {
    /// Output format. CSV is only available for `gram`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct IndexArgs {
    /// Order k (k > l).
    #[arg(long)]
    k: u32,
    /// Degree l.
    #[arg(long)]
    l: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate Q^k_l(ix) from the closed form.
    Eval {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Hobson's phase convention instead of Ferrers'.
        #[arg(long)]
        hobson: bool,
    },
    /// Exact numerator polynomial N_kl and parity.
    Poly {
        #[command(flatten)]
        index: IndexArgs,
    },
    /// A0(l) from the closed form and from the finite sum.
    A0 {
        #[arg(long)]
        l: u32,
    },
    /// Gram matrix of order k with exact expected values.
    Gram {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Inner product of Q^k_l and Q^k_lp over the real line.
    Integrate {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        lp: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Large-|x| series for real degree l.
    Asym {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        l: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Run the identity-verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Stop at the first failing check.
        #[arg(long)]
        fail_fast: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    Exact,
    Quadrature,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Exact => Suite::Exact,
            SuiteArg::Quadrature => Suite::Quadrature,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Why a command did not produce a clean report.
enum Outcome {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Domain(e)
    }
}

fn index(args: &IndexArgs) -> Result<LegendreIndex, Error> {
    LegendreIndex::new(args.k, args.l)
}

fn run(cli: &Cli) -> Result<Emit, Outcome> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Gram { .. }) {
        return Err(Outcome::Usage("--format csv is only supported by the gram command".into()));
    }
    let report = match &cli.command {
        Command::Eval { index: idx, x, hobson } => {
            let idx = index(idx)?;
            let value = if *hobson { q_hobson(idx, *x)? } else { q_ferrers(idx, *x)? };
            Report::value(value)
        }
        Command::Poly { index: idx } => {
            let n = ferrers_numerator(index(idx)?)?;
            let a0 = (idx.k == idx.l + 1).then(|| a0_closed(idx.l));
            Report::poly(&n, a0)
        }
        Command::A0 { l } => {
            legendre_qix::exactpoly::check_degree(*l)?;
            Report::a0(*l, a0_closed(*l), a0_sum(*l))
        }
        Command::Gram { k, tol } => {
            check_tol(*tol)?;
            let g = gram_matrix::<f64>(*k, *tol)?;
            let converged = g.converged;
            let report = Report::gram(&g, *tol);
            if !converged {
                return Ok(Emit::with_failures(report, vec![Failure::new("gram", "quadrature did not converge")]));
            }
            report
        }
        Command::Integrate { index: idx, lp, tol } => {
            check_tol(*tol)?;
            let r = inner_product::<f64>(idx.k, idx.l, *lp, *tol)?;
            let expected = if idx.l == *lp { Some(normalization_exact(idx.k, idx.l)?) } else { None };
            Report::integral(&r, expected)
        }
        Command::Asym { k, l, x, terms } => {
            if *terms == 0 || *terms > MAX_SERIES_TERMS {
                return Err(Outcome::Usage(format!("--terms must be in 1..={MAX_SERIES_TERMS}")));
            }
            Report::series(&q_asymptotic(*k, *l, *x, *terms)?)
        }
        Command::Verify { suite, fail_fast } => {
            let mut outcomes = Vec::new();
            let suite = Suite::from(*suite);
            for check in verify::checks().iter().filter(|c| suite.includes(c.group)) {
                let outcome = check.run();
                let stop = *fail_fast && !outcome.passed;
                outcomes.push(outcome);
                if stop {
                    break;
                }
            }
            let failures = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| Failure::new(o.id, &o.detail))
                .collect();
            return Ok(Emit::with_failures(Report::checks(&outcomes), failures));
        }
    };
    Ok(Emit::clean(report))
}

fn check_tol(tol: f64) -> Result<(), Outcome> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Outcome::Usage(format!("--tol must lie in (0, 1) (got {tol})")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(emit) => {
            print!("{}", emit.report.render(cli.format));
            for failure in &emit.failures {
                eprintln!("{}", failure.to_json_line());
            }
            if emit.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Outcome::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
