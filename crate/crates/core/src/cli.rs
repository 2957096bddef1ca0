//! The `gt-hypergeo` command line: argument parsing, validation into a
//! [`RunConfig`], dispatch, and output in plain text, CSV or JSON.
//!
//! Every entry point writes results to `out` and diagnostics to `err`, so the
//! binary and the tests drive exactly the same code.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergeo::{bessel, ho_f, phi_k, phi_k_trig, EvalResult, QuadratureSpec};
use crate::macdonald::{macdonald_poly, MacParams};
use crate::orbit::{harish_chandra_rhs, orbit_mc};
use crate::scalar::{parse_rational, rational_to_f64, Hp, Rational, DEFAULT_PRECISION};
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gt-hypergeo", version, about = "Bessel and Heckman-Opdam functions via Gelfand-Tsetlin integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Significand bits for high-precision evaluation.
    #[arg(long, global = true, env = "GT_HYPERGEO_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Evaluate a function at one point.
    Eval(EvalArgs),
    /// Run a verification suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Monte Carlo estimate of the orbit integral, streamed in batches.
    SampleOrbit(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    /// Normalized multivariate Bessel function `B_k(λ, s)`.
    Bessel,
    /// Normalized Heckman-Opdam function `F_k(λ, s)`.
    Ho,
    /// Exact Macdonald polynomial `P_λ(x; q², t²)` in the monomial basis.
    Macdonald,
    /// Unnormalized rational integral `φ_k(λ, s)`.
    #[value(name = "phi")]
    PhiRational,
    /// Unnormalized trigonometric integral `Φ_k(λ, s)`.
    #[value(name = "Phi")]
    PhiTrig,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub kind: EvalKind,
    /// Comma-separated `λ`, e.g. `2,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Comma-separated spectral variable `s`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Gauss-Legendre nodes per dimension and panel.
    #[arg(long, default_value_t = 24)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1)]
    pub panels: usize,
    /// Partition for `eval macdonald`, e.g. `2,1`.
    #[arg(long)]
    pub partition: Option<String>,
    /// Number of variables for `eval macdonald`.
    #[arg(long)]
    pub n: Option<usize>,
    /// `q` as `p/q`, integer or decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Optional point at which to evaluate the Macdonald polynomial.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// all, unitary, macdonald, symmetry, zk, kappa, resk, hc, bessel,
    /// eigen, matrix-element, psi, limits, adjoint or leading.
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 4)]
    pub l_max: usize,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Replaces the suite's headline tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1)]
    pub panels: usize,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent batches reported along the way.
    #[arg(long, default_value_t = 10)]
    pub batches: u64,
    /// Sample the trigonometric integral `Ψ_k` instead of `ψ_k`.
    #[arg(long)]
    pub trig: bool,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub format: Format,
    pub threads: Option<usize>,
    pub precision: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Eval { kind: EvalKind, lambda: Vec<f64>, s: Vec<f64>, k: f64, spec: QuadratureSpec },
    Macdonald { partition: Vec<i32>, n: usize, q: Rational, t: Rational, x: Option<Vec<Rational>> },
    Verify { suite: Suite, config: Box<VerifyConfig> },
    Sample { lambda: Vec<f64>, s: Vec<f64>, k: u32, samples: u64, seed: u64, batches: u64, trig: bool },
}

/// Parses a comma-separated list of reals. Accepts the Unicode minus sign.
pub fn parse_list(name: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            let p = part.trim().replace('\u{2212}', "-");
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidInput(format!("{name}: cannot parse '{part}' as a number")))
        })
        .collect()
}

/// Sorts descending, warning on `err` if the input was not already sorted.
fn sorted_desc(name: &str, mut v: Vec<f64>, err: &mut (dyn Write + Send)) -> Vec<f64> {
    if v.windows(2).any(|w| w[0] < w[1]) {
        v.sort_by(|a, b| b.total_cmp(a));
        let _ = writeln!(err, "warning: {name} sorted into descending order: {v:?}");
    }
    v
}

fn required<'a>(flag: &str, value: &'a Option<String>) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| Error::InvalidInput(format!("--{flag} is required")))
}

fn point_pair(lambda: &str, s: &str, err: &mut (dyn Write + Send)) -> Result<(Vec<f64>, Vec<f64>)> {
    let lambda = sorted_desc("λ", parse_list("--lambda", lambda)?, err);
    let s = sorted_desc("s", parse_list("--s", s)?, err);
    if lambda.len() != s.len() {
        return Err(Error::InvalidInput(format!("λ has {} entries but s has {}", lambda.len(), s.len())));
    }
    Ok((lambda, s))
}

impl RunConfig {
    pub fn from_cli(cli: Cli, err: &mut (dyn Write + Send)) -> Result<Self> {
        if cli.threads == Some(0) {
            return Err(Error::InvalidInput("--threads must be positive".into()));
        }
        if cli.precision < 16 {
            return Err(Error::InvalidInput(format!("precision must be at least 16 bits, got {}", cli.precision)));
        }
        let task = match cli.command {
            CommandArgs::Eval(a) if a.kind == EvalKind::Macdonald => {
                let partition = required("partition", &a.partition)?
                    .split(',')
                    .map(|p| {
                        p.trim().parse::<i32>().map_err(|_| Error::InvalidInput(format!("bad partition entry '{p}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let n = a.n.unwrap_or(partition.len()).max(1);
                let q = parse_rational(required("q", &a.q)?)?;
                let t = parse_rational(required("t", &a.t)?)?;
                let x = match &a.x {
                    Some(text) => {
                        let x = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                        if x.len() != n {
                            return Err(Error::InvalidInput(format!("--x has {} entries, expected {n}", x.len())));
                        }
                        Some(x)
                    }
                    None => None,
                };
                Task::Macdonald { partition, n, q, t, x }
            }
            CommandArgs::Eval(a) => {
                let (lambda, s) = point_pair(required("lambda", &a.lambda)?, required("s", &a.s)?, err)?;
                if !(a.k.is_finite() && a.k > 0.0) {
                    return Err(Error::InvalidInput(format!("k must be positive, got {}", a.k)));
                }
                Task::Eval { kind: a.kind, lambda, s, k: a.k, spec: QuadratureSpec::new(a.nodes, a.panels)? }
            }
            CommandArgs::Verify(a) => {
                let suite: Suite = a.suite.parse()?;
                let mut config = VerifyConfig {
                    n: a.n,
                    n_max: a.n_max,
                    k: a.k,
                    l_max: a.l_max,
                    trials: a.trials,
                    samples: a.samples,
                    seed: a.seed,
                    spec: QuadratureSpec::new(a.nodes, a.panels)?,
                    ..VerifyConfig::default()
                };
                if let Some(tol) = a.tol {
                    if suite == Suite::All {
                        return Err(Error::InvalidInput("--tol needs a single suite".into()));
                    }
                    config.tol.override_for(suite, tol)?;
                }
                Task::Verify { suite, config: Box::new(config) }
            }
            CommandArgs::SampleOrbit(a) => {
                let (lambda, s) = point_pair(&a.lambda, &a.s, err)?;
                if a.samples < 2 {
                    return Err(Error::InvalidInput(format!("--samples must be at least 2, got {}", a.samples)));
                }
                if a.k == 0 {
                    return Err(Error::InvalidInput("k must be a positive integer".into()));
                }
                if lambda.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::Degenerate(format!("λ = {lambda:?} has repeated entries")));
                }
                let batches = a.batches.clamp(1, a.samples / 2);
                Task::Sample { lambda, s, k: a.k, samples: a.samples, seed: a.seed, batches, trig: a.trig }
            }
        };
        Ok(RunConfig { task, format: cli.format, threads: cli.threads, precision: cli.precision })
    }
}

/// Validation problems exit with 2, everything else with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::Degenerate(_)
        | Error::Interlacing(_)
        | Error::VariableMismatch
        | Error::IndexOutOfRange { .. }
        | Error::EigenvalueCollision(_)
        | Error::Unsupported(_) => EXIT_USAGE,
        Error::NotDivisible(_) | Error::Numerical(_) => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code.
pub fn main_with<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let config = match RunConfig::from_cli(cli, err) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let result = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&config, out, err)),
            Err(e) => Err(Error::Numerical(format!("cannot start thread pool: {e}"))),
        },
        None => execute(&config, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Numerical(format!("write failed: {e}"))
}

/// Runs a validated configuration.
pub fn execute(config: &RunConfig, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let start = Instant::now();
    match &config.task {
        Task::Eval { kind, lambda, s, k, spec } => {
            let r = match kind {
                EvalKind::Bessel => bessel(lambda, s, *k, *spec)?,
                EvalKind::Ho => ho_f(lambda, s, *k, *spec)?,
                EvalKind::PhiRational => phi_k(lambda, s, *k, *spec)?,
                EvalKind::PhiTrig => phi_k_trig(lambda, s, *k, *spec)?,
                EvalKind::Macdonald => unreachable!("macdonald is validated into its own task"),
            };
            let name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let inputs =
                json!({ "kind": name, "lambda": lambda, "s": s, "k": k, "nodes": spec.nodes, "panels": spec.panels });
            emit_eval(config.format, &format!("eval {name}"), inputs, &r, start, out)?;
            Ok(EXIT_OK)
        }
        Task::Macdonald { partition, n, q, t, x } => {
            let params = MacParams::new(q.clone(), t.clone())?;
            let poly = macdonald_poly(partition, &params, *n)?;
            let evaluation = match x {
                Some(x) => {
                    let point: Vec<Hp> = x.iter().map(|v| Hp::from_rational_prec(v, config.precision)).collect();
                    Some(poly.eval(&point)?)
                }
                None => None,
            };
            let coeffs: Vec<Value> = poly
                .coefficients
                .iter()
                .map(|(mu, c)| json!({ "monomial": mu, "coefficient": c.to_string() }))
                .collect();
            let inputs = json!({
                "partition": partition, "n": n, "q": q.to_string(), "t": t.to_string(),
                "x": x.as_ref().map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                "precision": config.precision,
            });
            let elapsed = start.elapsed().as_millis();
            match config.format {
                Format::Json => {
                    let mut record = json!({
                        "command": "eval macdonald", "inputs": inputs, "value": coeffs,
                        "est_error": 0.0, "work": poly.coefficients.len(), "elapsed_ms": elapsed,
                    });
                    if let Some(v) = &evaluation {
                        record["evaluation"] = json!(v.to_string());
                        record["evaluation_f64"] = json!(v.to_f64());
                    }
                    writeln!(out, "{record}").map_err(io)?;
                }
                Format::Csv => {
                    writeln!(out, "monomial,coefficient,approx").map_err(io)?;
                    for (mu, c) in &poly.coefficients {
                        writeln!(out, "\"{}\",{},{:e}", join(mu), c, rational_to_f64(c)).map_err(io)?;
                    }
                    if let Some(v) = &evaluation {
                        writeln!(out, "\"value at x\",{v},{:e}", v.to_f64()).map_err(io)?;
                    }
                }
                Format::Plain => {
                    writeln!(out, "P_({}) in {n} variables, q = {q}, t = {t}", join(partition)).map_err(io)?;
                    for (mu, c) in &poly.coefficients {
                        writeln!(out, "  m_({})  {c}", join(mu)).map_err(io)?;
                    }
                    if let Some(v) = &evaluation {
                        writeln!(out, "value at x = {v}").map_err(io)?;
                    }
                    writeln!(err, "elapsed: {elapsed} ms").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Task::Verify { suite, config: vc } => run_verify(config.format, *suite, vc, start, out, err),
        Task::Sample { lambda, s, k, samples, seed, batches, trig } => {
            run_sample(config.format, lambda, s, *k, *samples, *seed, *batches, *trig, start, out, err)
        }
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn emit_eval(
    format: Format,
    command: &str,
    inputs: Value,
    r: &EvalResult,
    start: Instant,
    out: &mut (dyn Write + Send),
) -> Result<()> {
    let elapsed = start.elapsed().as_millis();
    match format {
        Format::Json => {
            let record = json!({
                "command": command, "inputs": inputs, "value": r.value,
                "est_error": r.est_error, "work": r.work, "elapsed_ms": elapsed,
            });
            writeln!(out, "{record}").map_err(io)
        }
        Format::Csv => {
            writeln!(out, "command,value,est_error,work,elapsed_ms").map_err(io)?;
            writeln!(out, "{command},{:e},{:e},{},{elapsed}", r.value, r.est_error, r.work).map_err(io)
        }
        Format::Plain => {
            writeln!(out, "{command}: {:.15e} ± {:.2e} ({} evaluations, {elapsed} ms)", r.value, r.est_error, r.work)
                .map_err(io)
        }
    }
}

fn run_verify(
    format: Format,
    suite: Suite,
    config: &VerifyConfig,
    start: Instant,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32> {
    if format == Format::Csv {
        writeln!(out, "suite,label,pass,value,detail").map_err(io)?;
    }
    // Run suite by suite so that plain and CSV output stream as they finish.
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for s in suites {
        let report = verify::run_one(s, config)?;
        match format {
            Format::Plain => {
                for c in &report.checks {
                    writeln!(
                        out,
                        "{} {:<15} {:<40} {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        report.suite,
                        c.label,
                        c.detail
                    )
                    .map_err(io)?;
                }
                writeln!(
                    out,
                    "{} {}: {}/{} checks passed in {} ms",
                    if report.pass() { "PASS" } else { "FAIL" },
                    report.suite,
                    report.passed(),
                    report.checks.len(),
                    report.elapsed_ms
                )
                .map_err(io)?;
            }
            Format::Csv => {
                for c in &report.checks {
                    let value = c.value.map(|v| format!("{v:e}")).unwrap_or_default();
                    writeln!(
                        out,
                        "{},\"{}\",{},{value},\"{}\"",
                        report.suite,
                        c.label,
                        c.pass,
                        c.detail.replace('"', "'")
                    )
                    .map_err(io)?;
                }
            }
            Format::Json => {}
        }
        reports.push(report);
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let passed: usize = reports.iter().map(|r| r.passed()).sum();
    let pass = passed == total;
    let first = reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite.clone(), c.clone())));
    if let Some((name, c)) = &first {
        writeln!(err, "first failure: {name} {} ({})", c.label, c.detail).map_err(io)?;
    }
    let elapsed = start.elapsed().as_millis();
    match format {
        Format::Json => {
            let record = json!({
                "command": format!("verify {suite}"),
                "inputs": {
                    "suite": suite.name(), "n": config.n, "n_max": config.n_max, "k": config.k,
                    "l_max": config.l_max, "trials": config.trials, "samples": config.samples,
                    "seed": config.seed, "nodes": config.spec.nodes, "panels": config.spec.panels,
                    "tolerances": config.tol,
                },
                "value": passed, "est_error": Value::Null, "work": total, "elapsed_ms": elapsed, "pass": pass,
                "first_failure": first.map(|(name, c)| json!({ "suite": name, "check": c })),
                "reports": reports,
            });
            writeln!(out, "{record}").map_err(io)?;
        }
        Format::Plain => {
            writeln!(out, "{} verify {suite}: {passed}/{total} checks passed", if pass { "PASS" } else { "FAIL" })
                .map_err(io)?;
            writeln!(err, "elapsed: {elapsed} ms").map_err(io)?;
        }
        Format::Csv => writeln!(err, "elapsed: {elapsed} ms").map_err(io)?,
    }
    Ok(if pass { EXIT_OK } else { EXIT_FAILURE })
}

/// The seed of batch `b`: distinct streams, all fixed by the user seed.
fn batch_seed(seed: u64, b: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(b)
}

#[allow(clippy::too_many_arguments)]
fn run_sample(
    format: Format,
    lambda: &[f64],
    s: &[f64],
    k: u32,
    samples: u64,
    seed: u64,
    batches: u64,
    trig: bool,
    start: Instant,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32> {
    let base = samples / batches;
    let mut rows = Vec::new();
    // Pooled mean and variance of the mean over independent batches.
    let (mut sum, mut var) = (0.0, 0.0);
    match format {
        Format::Csv => writeln!(out, "batch,samples,value,est_error").map_err(io)?,
        Format::Plain => writeln!(out, "batch  samples  estimate  std_error").map_err(io)?,
        Format::Json => {}
    }
    for b in 0..batches {
        let n_b = if b + 1 == batches { samples - base * (batches - 1) } else { base };
        let r = orbit_mc(lambda, s, k, trig, n_b, batch_seed(seed, b))?;
        let w = n_b as f64 / samples as f64;
        sum += w * r.value;
        var += (w * r.est_error).powi(2);
        match format {
            Format::Csv => writeln!(out, "{},{n_b},{:e},{:e}", b + 1, r.value, r.est_error).map_err(io)?,
            Format::Plain => {
                writeln!(out, "{:>5}  {n_b:>7}  {:.10e}  {:.3e}", b + 1, r.value, r.est_error).map_err(io)?
            }
            Format::Json => {}
        }
        rows.push(json!({ "batch": b + 1, "samples": n_b, "value": r.value, "est_error": r.est_error }));
    }
    let stderr = var.sqrt();
    let reference = if k == 1 && !trig { harish_chandra_rhs(lambda, s).ok() } else { None };
    let elapsed = start.elapsed().as_millis();
    match format {
        Format::Json => {
            let mut record = json!({
                "command": "sample-orbit",
                "inputs": { "lambda": lambda, "s": s, "k": k, "samples": samples, "seed": seed, "batches": batches, "trig": trig },
                "value": sum, "est_error": stderr, "work": samples, "elapsed_ms": elapsed, "batches": rows,
            });
            if let Some(hc) = reference {
                record["harish_chandra"] = json!(hc);
            }
            writeln!(out, "{record}").map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "final,{samples},{sum:e},{stderr:e}").map_err(io)?;
            writeln!(err, "elapsed: {elapsed} ms").map_err(io)?;
        }
        Format::Plain => {
            writeln!(out, "final: {sum:.10e} ± {stderr:.3e} ({samples} samples)").map_err(io)?;
            if let Some(hc) = reference {
                writeln!(out, "Harish-Chandra value: {hc:.10e} ({:.2} σ)", (sum - hc).abs() / stderr).map_err(io)?;
            }
            // Timing goes to stderr so stdout is reproducible per seed.
            writeln!(err, "elapsed: {elapsed} ms").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}
