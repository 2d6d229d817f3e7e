//! `fourier-grid`: runs lemma suites and writes convergence, spectrum and
//! rescaling tables.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on bad
//! flags or configuration.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fourier_grid::continuous::{interval_function_from_name, rescale};
use fourier_grid::engine::{run_convergence, run_lemma_suite, run_spectrum_decay, Check, LemmaReport, SuiteConfig};
use serde::Serialize;

const WORKERS_VAR: &str = "FOURIER_WORKERS";
const RESCALE_POINTS: usize = 257;
const JSON_SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "fourier-grid", version, about = "Finite-grid Fourier series: lemma checks and convergence tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the lemma suite and write a JSON report.
    Verify(VerifyArgs),
    /// Tabulate sup-norm truncation error against the majorant.
    Converge(ConvergeArgs),
    /// Tabulate grid coefficient magnitudes against the decay bound.
    Spectrum(SpectrumArgs),
    /// Reconstruct a periodic function on [a, b] by rescaling to the circle.
    RescaleDemo(RescaleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated catalog names (trig:k, cos:k, expcos, combo:...).
    #[arg(long, default_value = "cos:1,trig:1,trig:3,expcos")]
    functions: String,
    #[arg(long, default_value = "4,16,64,256", value_delimiter = ',')]
    grid_sizes: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    mode_limit: usize,
    #[arg(long, default_value = "0.1,0.01", value_delimiter = ',')]
    epsilons: Vec<f64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override a check tolerance, as `check_name=value`. Repeatable.
    #[arg(long = "tolerance", value_parser = parse_tolerance)]
    tolerances: Vec<(Check, f64)>,
    /// Random grid functions per grid size.
    #[arg(long, default_value_t = 8)]
    random_samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long)]
    function: String,
    /// Truncation orders, strictly increasing.
    #[arg(long = "N", default_value = "1,2,4,8,16,32", value_delimiter = ',')]
    orders: Vec<usize>,
    #[arg(long, default_value_t = 2048)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RescaleArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// `cos-period` or `exp-cos-period`.
    #[arg(long, default_value = "cos-period")]
    function: String,
    #[arg(long = "N", default_value_t = 8)]
    order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_tolerance(s: &str) -> Result<(Check, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let check = Check::from_name(name.trim()).map_err(|e| e.to_string())?;
    let value: f64 = value.trim().parse().map_err(|e| format!("tolerance `{value}`: {e}"))?;
    Ok((check, value))
}

/// A failure to report, with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = configure_workers().and_then(|()| match cli.command {
        Command::Verify(args) => verify(args),
        Command::Converge(args) => converge(args),
        Command::Spectrum(args) => spectrum(args),
        Command::RescaleDemo(args) => rescale_demo(args),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(WORKERS_VAR) else {
        return Ok(());
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| Failure::usage(format!("{WORKERS_VAR} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot start {workers} workers: {e}")))
}

fn output(out: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn io_failure(e: impl ToString) -> Failure {
    Failure::usage(format!("write failed: {}", e.to_string()))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    schema: u32,
    reports: &'a [LemmaReport],
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let Format::Json = args.format;
    let cfg = SuiteConfig {
        function_names: args.functions.split(',').map(|s| s.trim().to_owned()).filter(|s| !s.is_empty()).collect(),
        grid_sizes: args.grid_sizes,
        mode_limit: args.mode_limit,
        epsilons: args.epsilons,
        seed: args.seed,
        tolerance_overrides: args.tolerances.into_iter().collect::<BTreeMap<_, _>>(),
        random_samples: args.random_samples,
    };
    let reports = run_lemma_suite(&cfg).map_err(Failure::usage)?;

    let mut out = output(args.out.as_ref())?;
    serde_json::to_writer_pretty(&mut out, &VerifyOutput { schema: JSON_SCHEMA, reports: &reports })
        .map_err(io_failure)?;
    writeln!(out).and_then(|()| out.flush()).map_err(io_failure)?;

    for report in &reports {
        eprintln!("{report}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} of {} checks passed", reports.len() - failed, reports.len());
    Ok(if failed == 0 { 0 } else { 1 })
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer(out: Option<&PathBuf>) -> Result<csv::Writer<Box<dyn Write>>, Failure> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(output(out)?))
}

fn write_table<const K: usize>(
    out: Option<&PathBuf>,
    header: [&str; K],
    rows: impl IntoIterator<Item = [String; K]>,
) -> Result<(), Failure> {
    let mut writer = csv_writer(out)?;
    writer.write_record(header).map_err(io_failure)?;
    for row in rows {
        writer.write_record(&row).map_err(io_failure)?;
    }
    writer.flush().map_err(io_failure)
}

fn converge(args: ConvergeArgs) -> Result<u8, Failure> {
    let rows = run_convergence(&args.function, &args.orders, args.samples).map_err(Failure::usage)?;
    write_table(
        args.out.as_ref(),
        ["N", "sup_error", "m_test_bound"],
        rows.iter().map(|r| [r.order.to_string(), float(r.sup_error), float(r.m_test_bound)]),
    )?;
    Ok(0)
}

fn spectrum(args: SpectrumArgs) -> Result<u8, Failure> {
    let rows = run_spectrum_decay(&args.function, args.n).map_err(Failure::usage)?;
    write_table(
        args.out.as_ref(),
        ["m", "abs_coeff", "decay_bound"],
        rows.iter().map(|r| [r.m.to_string(), float(r.abs_coeff), float(r.decay_bound)]),
    )?;
    Ok(0)
}

fn rescale_demo(args: RescaleArgs) -> Result<u8, Failure> {
    let (a, b) = (args.a, args.b);
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Failure::usage(format!("need a < b, got a = {a}, b = {b}")));
    }
    let f = interval_function_from_name(&args.function, a, b).map_err(Failure::usage)?;
    let rescaled = rescale(&f, a, b).map_err(Failure::usage)?;
    let series = rescaled.series(args.order);
    let step = (b - a) / (RESCALE_POINTS - 1) as f64;
    let rows = (0..RESCALE_POINTS).map(|k| {
        let x = if k == RESCALE_POINTS - 1 { b } else { a + k as f64 * step };
        let (value, approx) = (f.eval(x), series.eval(x));
        [float(x), float(value.re), float(approx.re), float((value - approx).norm())]
    });
    write_table(args.out.as_ref(), ["x", "f", "reconstruction", "abs_error"], rows)?;
    Ok(0)
}
