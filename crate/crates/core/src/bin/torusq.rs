use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use torusq::physical::reduce_label;
use torusq::report::{CheckResult, VerificationReport};
use torusq::suites::{run_suite, Suite, SuiteConfig, DEFAULT_SEED, DEFAULT_TOLERANCE};
use torusq::torus::{
    holonomy, sample, torus_p_basis, torus_q_basis, TorusGeometry, QUANTIZATION_TOLERANCE,
};
use torusq::Form;

/// Phase-space quantization on the torus: area quantization, basis dumps and
/// numerical verification suites.
#[derive(Parser)]
#[command(name = "torusq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a*b/h is an integer N; exit 1 if it is not.
    #[command(allow_negative_numbers = true)]
    Quantize {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        h: f64,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites; exit 1 if any check fails.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// Dimension of the physical space. Defaults to a*b/h when a and b are given.
        #[arg(long = "N")]
        n: Option<u64>,
        /// orthonormality, table1, weyl, dft, charts, commutators or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        /// Period in p; default sqrt(N*h).
        #[arg(long)]
        a: Option<f64>,
        /// Period in q; default sqrt(N*h).
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        /// Grid samples per axis; default 8N.
        #[arg(long = "M")]
        grid: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Write a sampled basis state as CSV (i,j,q,p,re,im).
    #[command(allow_negative_numbers = true)]
    Dump {
        kind: DumpKind,
        #[arg(long = "N")]
        n_dim: u64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Grid samples per axis; default 8N.
        #[arg(long = "M")]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        /// Replace (n, m) by the equivalent (n mod N, 0) before validating.
        #[arg(long)]
        reduce: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    /// exp(2 pi i N (p/a - m/N)(q/b - n/N))
    Qbasis,
    /// exp(2 pi i (m q/b - n p/a))
    Pbasis,
}

/// Usage or input error; exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Quantize { a, b, h, json } => quantize(a, b, h, json),
        Command::Verify {
            n,
            suite,
            json,
            a,
            b,
            h,
            grid,
            tolerance,
            seed,
        } => verify(n, &suite, json, a, b, h, grid, tolerance, seed),
        Command::Dump {
            kind,
            n_dim,
            n,
            m,
            grid,
            h,
            reduce,
            out,
        } => dump(kind, n_dim, n, m, grid, h, reduce, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
    }
}

fn quantize(a: f64, b: f64, h: f64, json: bool) -> Result<bool, UsageError> {
    let g = TorusGeometry::new(a, b, h)?;
    let ratio = g.area_ratio();
    let hol = holonomy(&g);
    let defect = (ratio - ratio.round()).abs() / ratio;
    let check = CheckResult::at_most("quantize.area", defect, QUANTIZATION_TOLERANCE)
        .with_param("area_over_h", ratio)
        .with_param("holonomy", json!([hol.re, hol.im]));
    let check = if g.is_quantized() {
        check
    } else {
        check.failed()
    };
    let report = VerificationReport::new(&g, vec![check]);
    if json {
        println!("{}", report.to_json());
    } else if let Some(n) = g.n() {
        println!("N = {n}");
    } else {
        println!(
            "not quantized: a*b/h = {ratio}, holonomy = {}{:+}i",
            tidy(hol.re),
            tidy(hol.im)
        );
    }
    Ok(report.overall_pass)
}

// Rounds to 12 decimals and drops the sign of zero.
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12 + 0.0
}

#[allow(clippy::too_many_arguments)]
fn verify(
    n: Option<u64>,
    suite: &str,
    json: bool,
    a: Option<f64>,
    b: Option<f64>,
    h: f64,
    grid: Option<usize>,
    tolerance: f64,
    seed: u64,
) -> Result<bool, UsageError> {
    let suite: Suite = suite.parse()?;
    let geometry = match (a, b, n) {
        (Some(a), Some(b), _) => TorusGeometry::new(a, b, h)?,
        (None, None, Some(n)) => TorusGeometry::symmetric(n, h)?,
        (None, None, None) => return Err(UsageError("--N is required".into())),
        _ => return Err(UsageError("--a and --b must be given together".into())),
    };
    let found = geometry.require_quantized()?;
    if let Some(n) = n.filter(|&n| n != found) {
        return Err(UsageError(format!(
            "--N {n} does not match a*b/h = {found}"
        )));
    }
    let mut config = SuiteConfig::new(geometry)?;
    if let Some(m) = grid {
        if m == 0 || !(m as u64).is_multiple_of(found) {
            return Err(UsageError(format!(
                "--M {m} is not a positive multiple of N = {found}"
            )));
        }
        config.grid_size = m;
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(UsageError(format!(
            "--tolerance must be positive, got {tolerance}"
        )));
    }
    config.tolerance = tolerance;
    config.seed = seed;

    let report = VerificationReport::new(&geometry, run_suite(suite, &config)?);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_table());
    }
    Ok(report.overall_pass)
}

#[allow(clippy::too_many_arguments)]
fn dump(
    kind: DumpKind,
    n_dim: u64,
    n: i64,
    m: i64,
    grid: Option<usize>,
    h: f64,
    reduce: bool,
    out: Option<PathBuf>,
) -> Result<bool, UsageError> {
    let geometry = TorusGeometry::symmetric(n_dim, h)?;
    let big = n_dim as i64;
    let (n, m) = if reduce {
        let label = reduce_label(n, m, big)?;
        (label.n, label.m)
    } else {
        (n, m)
    };
    if !(0..big).contains(&n) || !(0..big).contains(&m) {
        return Err(UsageError(format!(
            "labels (n, m) = ({n}, {m}) must lie in [0, {big}); use --reduce to map them"
        )));
    }
    let wf = match kind {
        DumpKind::Qbasis => torus_q_basis(&geometry, n, m, Form::Primed)?,
        DumpKind::Pbasis => torus_p_basis(&geometry, n, m, Form::Plain)?,
    };
    let samples = sample(&wf, &geometry, grid.unwrap_or(8 * n_dim as usize))?;
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(&path)?);
            samples.write_csv(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            samples.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(true)
}
