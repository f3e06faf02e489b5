//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 when every verdict holds or is not applicable, 1 when some
//! check fails, 2 for usage and I/O errors, 3 for numerical certificate
//! failures. Diagnostics go to `stderr` as one line.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::scheme::{read_scheme, write_scheme, Family, Scheme, DEFAULT_VERTEX_CAP};
use crate::terwilliger::{BasePoints, TerwilligerConfig, DEFAULT_SEED};
use crate::theorems::{analyze, johnson_dual_c_inequality, reports_for, Verdict};
use crate::tolerance::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SCHEME_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "scheme-lab", version, about = "Association schemes, T-module decompositions and multiplicity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, valencies and intersection numbers.
    Info {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenmatrices, multiplicities, Krein parameters and orderings.
    Spectra {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Irreducible T(x)-module profiles.
    Modules {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// Decompose at this vertex only.
        #[arg(long)]
        base_point: Option<usize>,
    },
    /// Run every applicable check.
    Check {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
    },
    /// Compare c*_{k-1} and c*_k for J(k^2, k) in exact arithmetic.
    JohnsonCstar {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a family scheme in the text format.
    Gen {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Hamming,
    Johnson,
    Cycle,
    Complete,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    #[arg(long, value_enum, conflicts_with = "input")]
    family: Option<FamilyName>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Class-table file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Refuse to build families with more vertices than this.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct ToleranceArgs {
    #[arg(long)]
    tol_eigen_gap: Option<f64>,
    #[arg(long)]
    tol_idempotent: Option<f64>,
    #[arg(long)]
    tol_krein: Option<f64>,
    #[arg(long)]
    tol_krein_zero: Option<f64>,
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    tol_invariance: Option<f64>,
    #[arg(long)]
    tol_integer: Option<f64>,
    #[arg(long)]
    tol_split_gap: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasePointPolicy {
    All,
    Sample,
}

#[derive(Args, Debug)]
struct AnalysisArgs {
    #[command(flatten)]
    tol: ToleranceArgs,
    /// Seed for the generic elements used to split modules (decimal or 0x hex).
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = BasePointPolicy::All)]
    base_points: BasePointPolicy,
    /// Acknowledge that the automorphism group is vertex-transitive, which
    /// makes `--base-points sample` valid.
    #[arg(long)]
    assume_transitive: bool,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

/// A usage error or a library error, each knowing its exit code.
enum Failure {
    Usage(String),
    Lib(crate::Error),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<crate::scheme::SchemeError> for Failure {
    fn from(e: crate::scheme::SchemeError) -> Self {
        Failure::Lib(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(e) if e.is_numerical() => EXIT_NUMERICAL,
            Failure::Lib(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

impl ToleranceArgs {
    fn resolve(&self) -> Result<Tolerances, Failure> {
        let mut tol = Tolerances::default();
        let overrides = [
            (self.tol_eigen_gap, &mut tol.eigen_gap),
            (self.tol_idempotent, &mut tol.idempotent),
            (self.tol_krein, &mut tol.krein),
            (self.tol_krein_zero, &mut tol.krein_zero),
            (self.tol_rank, &mut tol.rank),
            (self.tol_invariance, &mut tol.invariance),
            (self.tol_integer, &mut tol.integer),
            (self.tol_split_gap, &mut tol.split_gap),
        ];
        for (value, slot) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
        }
        tol.validate().map_err(Failure::Usage)?;
        Ok(tol)
    }
}

impl AnalysisArgs {
    fn config(&self) -> Result<TerwilligerConfig, Failure> {
        let base_points = match (self.base_points, self.assume_transitive) {
            (BasePointPolicy::All, _) => BasePoints::All,
            (BasePointPolicy::Sample, true) => BasePoints::AssumeTransitive,
            (BasePointPolicy::Sample, false) => {
                return Err(Failure::Usage("--base-points sample requires --assume-transitive".into()))
            }
        };
        Ok(TerwilligerConfig { tol: self.tol.resolve()?, seed: self.seed, base_points, ..TerwilligerConfig::default() })
    }
}

impl SchemeArgs {
    fn family(&self) -> Result<Family, Failure> {
        let need = |value: Option<usize>, flag: &str, family: &str| {
            value.ok_or_else(|| Failure::Usage(format!("--family {family} needs --{flag}")))
        };
        let family = self.family.ok_or_else(|| Failure::Usage("one of --family or --input is required".into()))?;
        Ok(match family {
            FamilyName::Hamming => Family::Hamming { d: need(self.d, "d", "hamming")?, q: need(self.q, "q", "hamming")? },
            FamilyName::Johnson => Family::Johnson { v: need(self.v, "v", "johnson")?, k: need(self.k, "k", "johnson")? },
            FamilyName::Cycle => Family::Cycle { m: need(self.m, "m", "cycle")? },
            FamilyName::Complete => Family::Complete { n: need(self.n, "n", "complete")? },
        })
    }

    fn load(&self) -> Result<Scheme, Failure> {
        match &self.input {
            Some(path) => Ok(read_scheme(path)?),
            None => Ok(self.family()?.build(self.cap)?),
        }
    }
}

/// Rendered output and where it goes.
struct Rendered {
    code: i32,
    text: String,
    path: Option<PathBuf>,
}

impl Rendered {
    fn new(code: i32, text: String, path: Option<PathBuf>) -> Self {
        Self { code, text, path }
    }

    fn emit(self, stdout: &mut dyn Write) -> Result<i32, Failure> {
        let result = match &self.path {
            Some(path) => std::fs::write(path, &self.text),
            None => stdout.write_all(self.text.as_bytes()),
        };
        result.map(|_| self.code).map_err(|source| {
            let path = self.path.as_ref().map_or_else(|| "<stdout>".to_string(), |p| p.display().to_string());
            Failure::Lib(crate::Error::Io { path, source })
        })
    }
}

fn execute(command: Command) -> Result<Rendered, Failure> {
    match command {
        Command::Info { scheme, output } => {
            let s = scheme.load()?;
            Ok(Rendered::new(EXIT_OK, render::info(&s, output.format)?, output.output))
        }
        Command::Spectra { scheme, output, tol } => {
            let s = scheme.load()?;
            let tol = tol.resolve()?;
            Ok(Rendered::new(EXIT_OK, render::spectra(&s, &tol, output.format)?, output.output))
        }
        Command::Modules { scheme, output, analysis, base_point } => {
            let s = scheme.load()?;
            let config = analysis.config()?;
            Ok(Rendered::new(EXIT_OK, render::modules(&s, &config, base_point, output.format)?, output.output))
        }
        Command::Check { scheme, output, analysis } => {
            let s = scheme.load()?;
            let config = analysis.config()?;
            let result = analyze(&s, &config)?;
            let reports = reports_for(&s, &result);
            let text = render::check(&s, &result, &reports, output.format)?;
            Ok(Rendered::new(exit_for(&reports), text, output.output))
        }
        Command::JohnsonCstar { k, output } => {
            let report = johnson_dual_c_inequality(k)?;
            let text = render::johnson(&report, output.format)?;
            Ok(Rendered::new(exit_for(std::slice::from_ref(&report)), text, output.output))
        }
        Command::Gen { scheme, output } => {
            let s = scheme.load()?;
            Ok(Rendered::new(EXIT_OK, write_scheme(&s), output))
        }
    }
}

fn exit_for(reports: &[crate::theorems::CheckReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fails) {
        EXIT_FAILED_CHECK
    } else {
        EXIT_OK
    }
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    let outcome = match thread_cap() {
        Err(f) => Err(f),
        Ok(None) => execute(cli.command),
        Ok(Some(threads)) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Failure::Usage(format!("cannot start {threads} worker threads: {e}"))),
        },
    }
    .and_then(|rendered| rendered.emit(stdout));
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}
