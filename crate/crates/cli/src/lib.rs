//! Batch command-line surface over `gjms-core`.
//!
//! Data (reports, tables, polynomials) goes to stdout or `--output`;
//! timings and failure summaries go to stderr. Exit code 0 means every check
//! passed, 1 means at least one failed, 2 means a usage or parameter error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use gjms_core::exact::{fmt_exact, parse_rational};
use gjms_core::intertwinor::{
    reconstruct_eigenvalues, trace_intertwining, verify_intertwining_with, verify_reconstruction,
    Mode, SignFlip, SignSlot,
};
use gjms_core::operators::{
    build_a2m, build_g2m, build_g2m_paired, gover_product, sphere_specialize,
    verify_appendix_recursion_with, verify_factorization_with, verify_gover_form,
    verify_paired_form, verify_paneitz_claim, A2mPerturbation, CurvatureContext,
    RecursionPerturbation,
};
use gjms_core::spectrum::{
    crosscheck_a_numeric, crosscheck_paneitz, crosscheck_yamabe, product_spectrum,
};
use gjms_core::{Error, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gjms",
    version,
    about = "Exact verification of conformal power-of-Laplacian operators on S^p x S^q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Output format for reports and tables.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write data to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Inject a known error into the selected identity; the run must exit 1.
    #[arg(long, global = true)]
    pub self_test_negative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Orders {
    /// Check a single order m.
    #[arg(long)]
    pub m: Option<i64>,
    /// Check every order 1..=mmax.
    #[arg(long, default_value_t = 10)]
    pub mmax: i64,
}

impl Orders {
    fn range(&self) -> Result<Vec<usize>, String> {
        match self.m {
            Some(m) if m < 1 => Err(format!("--m must be at least 1 (got {m})")),
            Some(m) => Ok(vec![m as usize]),
            None if self.mmax < 1 => Err(format!("--mmax must be at least 1 (got {})", self.mmax)),
            None => Ok((1..=self.mmax as usize).collect()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Factors {
    #[arg(long, default_value_t = 1)]
    pub p: i64,
    #[arg(long, default_value_t = 3)]
    pub q: i64,
}

impl Factors {
    fn get(&self) -> Result<(u32, u32), String> {
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(1..=10_000).contains(&v) {
                return Err(format!("--{name} must be between 1 and 10000 (got {v})"));
            }
        }
        Ok((self.p as u32, self.q as u32))
    }
}

#[derive(Debug, Clone, Args)]
pub struct Modes {
    #[arg(long, default_value_t = 20)]
    pub jmax: i64,
    #[arg(long, default_value_t = 20)]
    pub kmax: i64,
}

impl Modes {
    fn get(&self) -> Result<(u32, u32), String> {
        for (name, v) in [("jmax", self.jmax), ("kmax", self.kmax)] {
            if !(0..=10_000).contains(&v) {
                return Err(format!("--{name} must be between 0 and 10000 (got {v})"));
            }
        }
        Ok((self.jmax as u32, self.kmax as u32))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A_{2m}(C,B,Q) = G_{2m}(C,B) as polynomials, Q symbolic.
    VerifyFactorization {
        #[command(flatten)]
        orders: Orders,
        /// Include the expanded polynomials in the output.
        #[arg(long)]
        dump_poly: bool,
    },
    /// A_{2(m+1)}(C,B,Q) = A_{2m}(C-1,B,Q-1)(C+m-B)(C+m+B).
    VerifyRecursion {
        #[command(flatten)]
        orders: Orders,
        #[arg(long)]
        dump_poly: bool,
    },
    /// The even-power product form of G_{2m}.
    VerifyPaired {
        #[command(flatten)]
        orders: Orders,
        #[arg(long)]
        dump_poly: bool,
    },
    /// G_{2m}(C, 1/2) against prod (Delta + c_l n(n-1)) on S^n.
    VerifyGover {
        #[command(flatten)]
        orders: Orders,
        /// Sphere dimension; all n in 2..=10 when omitted.
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        dump_poly: bool,
    },
    /// Explicit restricted square of the d'Alembertian against the Paneitz
    /// operator built from curvature.
    VerifyPaneitzClaim {
        #[command(flatten)]
        factors: Factors,
    },
    /// Spectral values of G_2, G_4 and A_{2m} against the Yamabe and Paneitz
    /// operators and G_{2m}.
    Crosscheck {
        #[command(flatten)]
        factors: Factors,
        #[command(flatten)]
        orders: Orders,
        #[command(flatten)]
        modes: Modes,
        /// Value substituted for Q in A_{2m}.
        #[arg(long, default_value = "7/3")]
        qsample: String,
    },
    /// G U_{m-1} = U_{-m-1} G on torus modes |j|, |f| <= N.
    Intertwine {
        #[command(flatten)]
        orders: Orders,
        #[arg(long = "N", visible_alias = "radius", default_value_t = 25)]
        radius: i64,
        /// Dump both sides on one mode, step by step.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        f: i64,
    },
    /// Propagate intertwinor eigenvalues across the mode lattice.
    Reconstruct {
        #[command(flatten)]
        orders: Orders,
        #[arg(long = "N", visible_alias = "radius", default_value_t = 25)]
        radius: i64,
    },
    /// Eigenvalue and multiplicity table of G_{2m} on S^p x S^q.
    Spectrum {
        #[command(flatten)]
        factors: Factors,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[command(flatten)]
        modes: Modes,
    },
}

/// Exit code with the bytes destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

/// Everything a verification subcommand produces.
#[derive(Default)]
struct Batch {
    reports: Vec<VerificationReport>,
    polynomials: BTreeMap<String, String>,
    traces: Vec<Value>,
    results: Vec<Value>,
}

enum Payload {
    Batch(Batch),
    Table(gjms_core::spectrum::SpectrumTable),
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((payload, diagnostics)) => finish(cli, payload, diagnostics),
        Err(Failure::Usage(msg)) => Outcome::usage(msg),
        Err(Failure::Core(e)) => Outcome::usage(e.to_string()),
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidOrder(_)
            | Error::DimensionTooSmall(_)
            | Error::ZeroSphere
            | Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            other => Failure::Core(other),
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

fn dump_check(dump: bool, format: Format) -> Result<(), Failure> {
    if dump && format == Format::Csv {
        return Err(Failure::Usage(
            "--dump-poly needs --format json or text".into(),
        ));
    }
    Ok(())
}

fn negative_unsupported(cli: &Cli) -> Result<(), Failure> {
    if cli.self_test_negative {
        return Err(Failure::Usage(
            "--self-test-negative applies to verify-factorization, verify-recursion, intertwine, or no subcommand".into(),
        ));
    }
    Ok(())
}

const BINOMIAL_BUMP: A2mPerturbation = A2mPerturbation::Binomial { ell: 0, delta: 1 };
const SIGN_FLIP: SignFlip = SignFlip {
    term: 0,
    slot: SignSlot::F,
};

fn execute(cli: &Cli) -> Result<(Payload, Vec<String>), Failure> {
    let mut batch = Batch::default();
    let Some(command) = &cli.command else {
        if !cli.self_test_negative {
            return Err(Failure::Usage("no subcommand given; see --help".into()));
        }
        batch.reports.push(verify_factorization_with(
            3,
            Some(A2mPerturbation::Binomial { ell: 1, delta: 1 }),
        )?);
        batch.reports.push(verify_appendix_recursion_with(
            2,
            Some(RecursionPerturbation::RepeatedFactor),
        )?);
        batch
            .reports
            .push(verify_intertwining_with(2, 6, Some(SIGN_FLIP))?);
        return Ok((Payload::Batch(batch), Vec::new()));
    };

    match command {
        Command::VerifyFactorization { orders, dump_poly } => {
            dump_check(*dump_poly, cli.format)?;
            let perturb = cli.self_test_negative.then_some(BINOMIAL_BUMP);
            for m in orders.range()? {
                batch.reports.push(verify_factorization_with(m, perturb)?);
                if *dump_poly {
                    batch
                        .polynomials
                        .insert(format!("A_{}", 2 * m), build_a2m(m)?.to_string());
                    batch
                        .polynomials
                        .insert(format!("G_{}", 2 * m), build_g2m(m)?.to_string());
                }
            }
        }
        Command::VerifyRecursion { orders, dump_poly } => {
            dump_check(*dump_poly, cli.format)?;
            let perturb = cli
                .self_test_negative
                .then_some(RecursionPerturbation::RepeatedFactor);
            for m in orders.range()? {
                batch
                    .reports
                    .push(verify_appendix_recursion_with(m, perturb)?);
                if *dump_poly {
                    batch
                        .polynomials
                        .insert(format!("A_{}", 2 * (m + 1)), build_a2m(m + 1)?.to_string());
                }
            }
        }
        Command::VerifyPaired { orders, dump_poly } => {
            negative_unsupported(cli)?;
            dump_check(*dump_poly, cli.format)?;
            for m in orders.range()? {
                batch.reports.push(verify_paired_form(m)?);
                if *dump_poly {
                    batch.polynomials.insert(
                        format!("G_{}_paired", 2 * m),
                        build_g2m_paired(m)?.to_string(),
                    );
                }
            }
        }
        Command::VerifyGover {
            orders,
            n,
            dump_poly,
        } => {
            negative_unsupported(cli)?;
            dump_check(*dump_poly, cli.format)?;
            let dims: Vec<i64> = match n {
                Some(n) if *n < 2 => {
                    return Err(Failure::Usage(format!("--n must be at least 2 (got {n})")))
                }
                Some(n) => vec![*n],
                None => (2..=10).collect(),
            };
            for m in orders.range()? {
                for &n in &dims {
                    batch.reports.push(verify_gover_form(m, n)?);
                    if *dump_poly {
                        batch.polynomials.insert(
                            format!("sphere_m{m}_n{n}"),
                            sphere_specialize(m, n)?.to_string(),
                        );
                        batch
                            .polynomials
                            .insert(format!("gover_m{m}_n{n}"), gover_product(m, n)?.to_string());
                    }
                }
            }
        }
        Command::VerifyPaneitzClaim { factors } => {
            negative_unsupported(cli)?;
            let (p, q) = factors.get()?;
            batch
                .reports
                .push(verify_paneitz_claim(&CurvatureContext::new(p, q)?)?);
        }
        Command::Crosscheck {
            factors,
            orders,
            modes,
            qsample,
        } => {
            negative_unsupported(cli)?;
            let (p, q) = factors.get()?;
            let (jmax, kmax) = modes.get()?;
            let sample: BigRational = parse_rational(qsample)
                .map_err(|_| Failure::Usage(format!("--qsample: not a rational: {qsample:?}")))?;
            batch.reports.push(crosscheck_yamabe(p, q, jmax, kmax)?);
            batch.reports.push(crosscheck_paneitz(p, q, jmax, kmax)?);
            for m in orders.range()? {
                batch
                    .reports
                    .push(crosscheck_a_numeric(p, q, m, &sample, jmax, kmax)?);
            }
        }
        Command::Intertwine {
            orders,
            radius,
            trace,
            j,
            f,
        } => {
            let flip = cli.self_test_negative.then_some(SIGN_FLIP);
            for m in orders.range()? {
                batch
                    .reports
                    .push(verify_intertwining_with(m, *radius, flip)?);
                if *trace {
                    batch
                        .traces
                        .push(trace_intertwining(m, Mode::new(*j, *f))?.to_json());
                }
            }
        }
        Command::Reconstruct { orders, radius } => {
            negative_unsupported(cli)?;
            if *radius < 0 {
                return Err(Failure::Usage(format!(
                    "--N must be non-negative (got {radius})"
                )));
            }
            for m in orders.range()? {
                batch.reports.push(verify_reconstruction(m, *radius)?);
                let result = reconstruct_eigenvalues(m, *radius)?;
                let ratios: Vec<Value> = result
                    .class_ratios()?
                    .iter()
                    .map(|r| r.as_ref().map_or(Value::Null, |x| json!(fmt_exact(x))))
                    .collect();
                let mut v = result.to_json();
                v["class_ratios"] = Value::Array(ratios);
                batch.results.push(v);
            }
        }
        Command::Spectrum { factors, m, modes } => {
            negative_unsupported(cli)?;
            let (p, q) = factors.get()?;
            let (jmax, kmax) = modes.get()?;
            if *m < 1 {
                return Err(Failure::Usage(format!("--m must be at least 1 (got {m})")));
            }
            let table = product_spectrum(p, q, *m as usize, jmax, kmax)?;
            let diag = vec![format!(
                "spectrum p={p} q={q} m={m}: {} rows",
                table.rows.len()
            )];
            return Ok((Payload::Table(table), diag));
        }
    }
    let diagnostics = batch
        .reports
        .iter()
        .map(|r| format!("{} ({} ms)", r.summary_line(), r.elapsed.as_millis()))
        .collect();
    Ok((Payload::Batch(batch), diagnostics))
}

fn render_batch(batch: &Batch, format: Format) -> String {
    match format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert(
                "reports".into(),
                Value::Array(batch.reports.iter().map(|r| r.to_data_json()).collect()),
            );
            if !batch.polynomials.is_empty() {
                doc.insert("polynomials".into(), json!(batch.polynomials));
            }
            if !batch.traces.is_empty() {
                doc.insert("traces".into(), Value::Array(batch.traces.clone()));
            }
            if !batch.results.is_empty() {
                doc.insert("results".into(), Value::Array(batch.results.clone()));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["claim", "status", "params", "witness"])
                .expect("csv");
            for r in &batch.reports {
                let params: Vec<String> =
                    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let status = if r.passed() { "pass" } else { "fail" };
                w.write_record([
                    r.claim.as_str(),
                    status,
                    params.join(";").as_str(),
                    r.witness.as_deref().unwrap_or(""),
                ])
                .expect("csv");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for r in &batch.reports {
                let _ = writeln!(s, "{}", r.summary_line());
            }
            for (name, poly) in &batch.polynomials {
                let _ = writeln!(s, "{name} = {poly}");
            }
            for t in &batch.traces {
                let _ = writeln!(s, "trace {t}");
            }
            for r in &batch.results {
                let _ = writeln!(
                    s,
                    "reconstruction m={} reached={} unreachable={} class_ratios={}",
                    r["m"],
                    r["values"].as_array().map_or(0, Vec::len),
                    r["unreachable"].as_array().map_or(0, Vec::len),
                    r["class_ratios"]
                );
            }
            s
        }
    }
}

fn render_table(table: &gjms_core::spectrum::SpectrumTable, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table.to_json()).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv(),
        Format::Text => {
            let recs = table.records();
            let mut s = format!(
                "{:>4} {:>4} {:>10} {:>10} {:>24} {:>16}\n",
                "j", "k", "c", "b", "eigenvalue", "multiplicity"
            );
            for r in recs {
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>10} {:>10} {:>24} {:>16}",
                    r.j, r.k, r.c, r.b, r.eigenvalue, r.multiplicity
                );
            }
            s
        }
    }
}

fn finish(cli: &Cli, payload: Payload, diagnostics: Vec<String>) -> Outcome {
    let (data, code) = match &payload {
        Payload::Batch(b) => {
            let failed = b.reports.iter().any(|r| !r.passed());
            (
                render_batch(b, cli.format),
                if failed { EXIT_FAIL } else { EXIT_PASS },
            )
        }
        Payload::Table(t) => (render_table(t, cli.format), EXIT_PASS),
    };
    let mut stderr = String::new();
    for line in &diagnostics {
        let _ = writeln!(stderr, "{line}");
    }
    if let Payload::Batch(b) = &payload {
        for r in b.reports.iter().filter(|r| !r.passed()) {
            let _ = writeln!(stderr, "failed: {}", r.summary_line());
        }
    }
    let stdout = match &cli.output {
        Some(path) => match std::fs::write(path, &data) {
            Ok(()) => String::new(),
            Err(e) => return Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => data,
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}
