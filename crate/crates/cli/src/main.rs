//! `hypersum` command-line interface.

mod commands;
mod output;
mod sweep;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypersum::literal::{parse_complex_list, parse_grid_axis, parse_real_list, GridAxis};
use hypersum::{Complex64, HypParams};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_VERIFY_FAIL: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }

    pub fn io(e: impl fmt::Display) -> Self {
        CliError {
            code: 1,
            message: format!("i/o: {e}"),
        }
    }
}

impl From<hypersum::Error> for CliError {
    fn from(e: hypersum::Error) -> Self {
        match e {
            hypersum::Error::Parse { .. } => CliError::usage(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComplexList(pub Vec<Complex64>);

#[derive(Clone, Debug)]
pub struct RealList(pub Vec<f64>);

fn complex_list_arg(s: &str) -> Result<ComplexList, String> {
    parse_complex_list(s)
        .map(ComplexList)
        .map_err(|e| e.to_string())
}

fn real_list_arg(s: &str) -> Result<RealList, String> {
    parse_real_list(s).map(RealList).map_err(|e| e.to_string())
}

fn grid_axis_arg(s: &str) -> Result<GridAxis, String> {
    parse_grid_axis(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "hypersum",
    version,
    about = "Partial sums of generalized hypergeometric series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
pub struct ParamArgs {
    /// Number of upper parameters; must match the length of --a.
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of lower parameters; must match the length of --b.
    #[arg(long)]
    pub q: Option<usize>,
    /// Upper parameters, comma separated: RE, RE+IMi or RE-IMi.
    #[arg(long, value_name = "LIST", value_parser = complex_list_arg, allow_hyphen_values = true)]
    pub a: Option<ComplexList>,
    /// Lower parameters, same syntax as --a.
    #[arg(long, value_name = "LIST", value_parser = complex_list_arg, allow_hyphen_values = true)]
    pub b: Option<ComplexList>,
}

impl ParamArgs {
    pub fn given(&self) -> bool {
        self.p.is_some() || self.q.is_some() || self.a.is_some() || self.b.is_some()
    }

    /// Parameters with counts checked against the lists; both default to
    /// empty, which is the exponential series.
    pub fn resolve(&self) -> Result<HypParams, CliError> {
        let a = self.a.clone().map_or_else(Vec::new, |l| l.0);
        let b = self.b.clone().map_or_else(Vec::new, |l| l.0);
        check_count("--p", "--a", self.p, a.len())?;
        check_count("--q", "--b", self.q, b.len())?;
        Ok(HypParams::new(a, b)?)
    }
}

fn check_count(
    count_flag: &str,
    list_flag: &str,
    count: Option<usize>,
    len: usize,
) -> Result<(), CliError> {
    match count {
        Some(c) if c != len => Err(CliError::usage(format!(
            "{count_flag} {c} but {list_flag} lists {len} value(s)"
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    /// Document format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the document to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Recurrence,
    Ode,
    Sobolev,
    CircleRep,
    AxisRep,
    Roots,
    Rifrac,
    Pencil,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// sup |g_n - pFq| over 64 points of the circle of radius --radius.
    Convergence,
    /// Root moduli and separation of g_n.
    RootModulus,
    /// Gram matrix diagnostics of g_0..g_n.
    Gram,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of g_n (or monic G_n), delta_k, kappa_n and the coefficients of R.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Emit G_n = g_n / xi_n instead of g_n.
        #[arg(long)]
        monic: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// g_n(z) and pFq(z) at the given points.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Evaluation points.
        #[arg(long, value_name = "LIST", value_parser = complex_list_arg, allow_hyphen_values = true)]
        z: ComplexList,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zeros of g_n with localization diagnostics.
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs the verification suites; exit 4 if any check fails.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Checks to run (repeatable).
        #[arg(long, value_enum, default_values_t = [CheckArg::All])]
        check: Vec<CheckArg>,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Draw parameters at random from each check's regime instead of using --a/--b.
        #[arg(long)]
        random: bool,
        /// Override a threshold, e.g. --tol gram_diag_rel_error=1e-6 (repeatable).
        #[arg(long, value_name = "NAME=VALUE")]
        tol: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Polynomials p_0..p_n of a Jacobi-type pencil and the relation residual.
    Pencil {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Points at which to report the residual of (J5 - lambda J3) p.
        #[arg(long, value_name = "LIST", value_parser = complex_list_arg, allow_hyphen_values = true)]
        lambda: Option<ComplexList>,
        /// Draw the pencil from --seed instead of reading the entries.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Diagonal b_k of J3.
        #[arg(long, value_name = "LIST", value_parser = real_list_arg, allow_hyphen_values = true)]
        j3_diag: Option<RealList>,
        /// Off-diagonal a_k > 0 of J3.
        #[arg(long, value_name = "LIST", value_parser = real_list_arg, allow_hyphen_values = true)]
        j3_off: Option<RealList>,
        /// Diagonal alpha_k of J5.
        #[arg(long, value_name = "LIST", value_parser = real_list_arg, allow_hyphen_values = true)]
        j5_diag: Option<RealList>,
        /// First off-diagonal beta_k of J5.
        #[arg(long, value_name = "LIST", value_parser = real_list_arg, allow_hyphen_values = true)]
        j5_off1: Option<RealList>,
        /// Second off-diagonal gamma_k > 0 of J5.
        #[arg(long, value_name = "LIST", value_parser = real_list_arg, allow_hyphen_values = true)]
        j5_off2: Option<RealList>,
        /// p_1 = alpha lambda + beta.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One CSV row per grid cell; cells run in parallel (cap with HYPERSUM_THREADS).
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Grid axis a<j>=LIST, b<l>=LIST or n=LIST (repeatable). An empty LIST gives an empty grid.
        #[arg(long, value_name = "AXIS=VALUES", value_parser = grid_axis_arg, allow_hyphen_values = true)]
        grid: Vec<GridAxis>,
        /// Degree used when the grid has no n axis.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Radius of the sample circle for --kind convergence.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen {
            params,
            n,
            monic,
            output,
        } => commands::gen(&params, n, monic, &output),
        Command::Eval {
            params,
            n,
            z,
            output,
        } => commands::eval(&params, n, &z.0, &output),
        Command::Roots { params, n, output } => commands::roots(&params, n, &output),
        Command::Verify {
            params,
            check,
            n_max,
            seed,
            draws,
            random,
            tol,
            output,
        } => {
            let cfg = commands::VerifyConfig {
                checks: check,
                n_max,
                seed,
                draws,
                random,
                tol,
            };
            commands::verify(&params, &cfg, &output)
        }
        Command::Pencil {
            n,
            lambda,
            random,
            seed,
            j3_diag,
            j3_off,
            j5_diag,
            j5_off1,
            j5_off2,
            alpha,
            beta,
            output,
        } => {
            let entries = commands::PencilEntries {
                j3_diag: j3_diag.map(|l| l.0),
                j3_off: j3_off.map(|l| l.0),
                j5_diag: j5_diag.map(|l| l.0),
                j5_off1: j5_off1.map(|l| l.0),
                j5_off2: j5_off2.map(|l| l.0),
                alpha,
                beta,
            };
            let lambdas = lambda.map_or_else(Vec::new, |l| l.0);
            commands::pencil(n, &lambdas, random, seed, entries, &output)
        }
        Command::Sweep {
            params,
            kind,
            grid,
            n,
            radius,
            output,
        } => sweep::sweep(&params, kind, &grid, n, radius, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
