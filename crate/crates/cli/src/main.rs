//! `derivgamma`: evaluate digamma/polygamma by several routes, print
//! convergence tables, and run the invariant suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.

mod output;
mod parse;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use derivgamma_core::{
    digamma, digamma_eq11_partial, digamma_partial, digamma_via_3f2, polygamma, psi_via_limit,
    reference_digamma, reference_polygamma, run_checks, series_term, tail_estimate, ComplexScalar,
    Error, EvalConfig, PartialSums, Suite, EQ11_MAX_TERMS,
};
use rayon::prelude::*;

use output::{Format, LimitRow, Method, OutputRecord, TableRow};

#[derive(Parser)]
#[command(
    name = "derivgamma",
    version,
    about = "Digamma and polygamma from the Pochhammer series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ψ (or ψ⁽ˡ⁾ with --order) at one or more points.
    Eval(EvalArgs),
    /// Evaluate polygamma ψ⁽ˡ⁾; --order defaults to 1.
    Poly(EvalArgs),
    /// Partial sums ψ_m(z) over a truncation schedule.
    Table(TableArgs),
    /// Finite-h limit construction for h = h0·2⁻ᵏ, k = 0..=steps.
    LimitDemo(LimitArgs),
    /// Run the cross-route invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Absolute tolerance for the adaptive series.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Hard cap on summed terms.
    #[arg(long, env = "DERIVGAMMA_MAX_TERMS", default_value_t = 1_000_000)]
    max_terms: usize,
    #[arg(long)]
    no_tail_correction: bool,
    #[arg(long)]
    no_reduction: bool,
}

impl ConfigArgs {
    fn config(&self) -> EvalConfig {
        EvalConfig::default()
            .with_tol(self.tol)
            .with_max_terms(self.max_terms)
            .with_tail_correction(!self.no_tail_correction)
            .with_reduction(!self.no_reduction)
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Argument, as a, a+bi or a-bi. Repeat for several points.
    #[arg(long, required = true, allow_hyphen_values = true, value_parser = parse::parse_complex)]
    z: Vec<ComplexScalar>,
    /// Derivative order l.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    method: Method,
    /// Number of terms for the eq11 method.
    #[arg(long, default_value_t = EQ11_MAX_TERMS)]
    m: usize,
    /// Step h for the limit method.
    #[arg(long, default_value_t = 1e-6)]
    h0: f64,
    /// Also report the absolute error against the reference implementation.
    #[arg(long)]
    compare: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::parse_complex)]
    z: ComplexScalar,
    /// Truncation schedule: a..b, a,b,c or log:a:b:count.
    #[arg(long, value_parser = parse::parse_schedule)]
    m: parse::Schedule,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse::parse_complex)]
    z: ComplexScalar,
    #[arg(long, default_value_t = 0.01)]
    h0: f64,
    #[arg(long, default_value_t = 6)]
    steps: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one module: pochhammer, beta, digamma, hypergeometric, polygamma or oracle.
    #[arg(long)]
    only: Option<Suite>,
    /// Multiply every tolerance by this factor (values below 1 tighten the suite).
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

enum Failure {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&mut out, &args, 0),
        Command::Poly(args) => cmd_eval(&mut out, &args, 1),
        Command::Table(args) => cmd_table(&mut out, &args),
        Command::LimitDemo(args) => cmd_limit_demo(&mut out, &args),
        Command::Verify(args) => cmd_verify(&mut out, &args),
    }
    .and_then(|code| Ok(out.flush().map(|_| code)?));
    match result {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_eval(
    out: &mut impl Write,
    args: &EvalArgs,
    default_order: usize,
) -> Result<ExitCode, Failure> {
    let config = args.config.config();
    config.validate()?;
    let order = args.order.unwrap_or(default_order);
    let records = args
        .z
        .par_iter()
        .map(|&z| evaluate(z, order, args, &config))
        .collect::<Result<Vec<_>, Error>>()?;
    output::write_records(out, args.format, &records)?;
    Ok(ExitCode::SUCCESS)
}

fn evaluate(
    z: ComplexScalar,
    order: usize,
    args: &EvalArgs,
    config: &EvalConfig,
) -> Result<OutputRecord, Error> {
    let method = args.method;
    if order > 0 && !matches!(method, Method::Series | Method::Oracle) {
        return Err(Error::Domain(format!(
            "method {method:?} evaluates digamma only; order {order} needs series or oracle"
        )));
    }
    let (value, terms_used, tail) = match method {
        Method::Series => {
            let r = if order == 0 {
                digamma(z, config)?
            } else {
                polygamma(z, order, config)?
            };
            (r.value, r.terms_used, r.tail_estimate)
        }
        Method::F32 => {
            let r = digamma_via_3f2(z, config)?;
            (r.value, r.terms_used, r.tail_estimate)
        }
        Method::Eq11 => {
            let value = digamma_eq11_partial(z, args.m)?;
            // no bound while the terms are still growing
            let tail = tail_estimate(z, series_term(z, args.m)?, args.m).unwrap_or(f64::INFINITY);
            (value, args.m, tail)
        }
        Method::Limit => (
            psi_via_limit(z, ComplexScalar::new(args.h0, 0.0))?,
            0,
            args.h0.abs(),
        ),
        Method::Oracle => (reference_polygamma(z, order)?, 0, 0.0),
    };
    let abs_err_vs_oracle = if args.compare {
        Some((value - reference_polygamma(z, order)?).norm())
    } else {
        None
    };
    Ok(OutputRecord {
        method,
        z: z.into(),
        order,
        value: value.into(),
        terms_used,
        tail_estimate: tail,
        abs_err_vs_oracle,
    })
}

fn cmd_table(out: &mut impl Write, args: &TableArgs) -> Result<ExitCode, Failure> {
    let z = args.z;
    let schedule: &[usize] = &args.m.0;
    let last = schedule.iter().copied().max().unwrap_or(0);
    // domain check before the sweep
    digamma_partial(z, 1)?;
    let oracle = reference_digamma(z)?;
    let mut wanted = schedule.to_vec();
    wanted.sort_unstable();
    wanted.dedup();

    let mut found = Vec::with_capacity(wanted.len());
    let mut next = wanted.iter().peekable();
    for p in PartialSums::new(z).take(last) {
        if next.peek() == Some(&&p.n) {
            next.next();
            found.push(TableRow {
                m: p.n,
                partial_sum_re: p.value.re,
                partial_sum_im: p.value.im,
                term_mag: p.term.norm(),
                tail_estimate: tail_estimate(z, p.term, p.n).ok(),
                abs_err_vs_oracle: (p.value - oracle).norm(),
            });
        }
    }
    if let Some(&&m) = next.peek() {
        return Err(Error::Overflow {
            what: "table partial sum",
            index: m,
        }
        .into());
    }
    let rows: Vec<TableRow> = schedule
        .iter()
        .map(|m| found[wanted.binary_search(m).expect("scheduled m was collected")].clone())
        .collect();
    output::write_rows(out, args.format, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_limit_demo(out: &mut impl Write, args: &LimitArgs) -> Result<ExitCode, Failure> {
    let z = args.z;
    let oracle = reference_digamma(z)?;
    let rows = (0..=args.steps)
        .into_par_iter()
        .map(|k| {
            let h = args.h0 * 0.5f64.powi(k as i32);
            let psi = psi_via_limit(z, ComplexScalar::new(h, 0.0))?;
            Ok(LimitRow {
                h,
                psi_re: psi.re,
                psi_im: psi.im,
                abs_err_vs_oracle: (psi - oracle).norm(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    output::write_rows(out, args.format, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(out: &mut impl Write, args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let suites: Vec<Suite> = match args.only {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    if !(args.tol_scale.is_finite() && args.tol_scale >= 0.0) {
        return Err(Error::Domain(format!(
            "--tol-scale must be finite and >= 0, got {}",
            args.tol_scale
        ))
        .into());
    }
    let checks: Vec<_> = suites
        .par_iter()
        .flat_map_iter(|&s| run_checks(Some(s)).checks)
        .map(|mut c| {
            c.tolerance *= args.tol_scale;
            c.pass = c.residual <= c.tolerance;
            c
        })
        .collect();
    let passed = checks.iter().all(|c| c.pass);
    match args.format {
        Format::Plain => {
            for c in &checks {
                writeln!(
                    out,
                    "{} {}/{} residual={:e} tolerance={:e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.residual,
                    c.tolerance
                )?;
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
        }
        Format::Csv => output::write_csv(out, &checks)?,
        Format::Json => output::write_json(out, &checks)?,
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
