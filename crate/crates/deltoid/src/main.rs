//! Thin command-line wrapper over [`deltoid::cli`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use deltoid::cli::{self, RunConfig, StartingGuess};
use deltoid::gencheb::Admissibility;
use deltoid::io;
use deltoid::linalg::Scalar;

#[derive(Parser)]
#[command(
    name = "deltoid",
    about = "Semi-iterative acceleration of stationary linear solvers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on a system read from Matrix Market files.
    Solve(SolveArgs),
    /// Print the convergence report for a system.
    Analyze(AnalyzeArgs),
    /// Emit a membership grid of the deltoid stability region.
    Deltoid(DeltoidArgs),
    /// Replay the built-in reference tables.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Jacobi,
    Chebyshev,
    Gencheby,
    StationaryClassical,
    StationaryGeneralized,
}

impl MethodArg {
    fn label(self) -> &'static str {
        match self {
            MethodArg::Jacobi => "jacobi",
            MethodArg::Chebyshev => "chebyshev",
            MethodArg::Gencheby => "gencheby",
            MethodArg::StationaryClassical => "stationary-classical",
            MethodArg::StationaryGeneralized => "stationary-generalized",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AdmissibilityArg {
    Strict,
    Warn,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    Zero,
    Random,
}

#[derive(Args)]
struct SolveArgs {
    /// Matrix Market file holding the system matrix.
    #[arg(long)]
    matrix_path: PathBuf,
    /// One-column array file holding the right-hand side.
    #[arg(long)]
    rhs_path: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Number of iterations to run.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Relative infinity-norm residual declaring convergence.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Dominant eigenvalue override, written re[+|-]imi (e.g. 0.2+0.333333i).
    #[arg(long)]
    lambda1_override: Option<String>,
    /// Companion offset file, bypassing the direct-solve construction.
    #[arg(long)]
    g_tilde_path: Option<PathBuf>,
    /// Exact solution file; enables the error-norm column.
    #[arg(long)]
    x_exact_path: Option<PathBuf>,
    /// Treatment of eigenvalue ratios outside the deltoid region.
    #[arg(long, value_enum, default_value = "strict")]
    admissibility: AdmissibilityArg,
    /// CSV trace destination.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Starting guess.
    #[arg(long, value_enum, default_value = "zero")]
    x0: StartArg,
    /// Seed for the random starting guess.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    matrix_path: PathBuf,
    #[arg(long)]
    rhs_path: PathBuf,
    /// Dominant eigenvalue override, written re[+|-]imi.
    #[arg(long)]
    lambda1_override: Option<String>,
    /// Also run traces of this many steps and print empirical rates.
    #[arg(long)]
    empirical_steps: Option<usize>,
}

#[derive(Args)]
struct DeltoidArgs {
    /// Grid points per axis over [-1.2, 1.2].
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReproArgs {
    /// Perturb the stored data and require the checks to notice.
    #[arg(long)]
    self_test: bool,
}

fn parse_lambda(arg: Option<String>) -> Result<Option<Scalar>, deltoid::Error> {
    arg.map(|s| io::parse_scalar(&s)).transpose()
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => cli::EXIT_OK,
                _ => cli::EXIT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Solve(args) => {
            let lambda1_override = match parse_lambda(args.lambda1_override) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return cli::EXIT_ERROR;
                }
            };
            let method = match cli::parse_method(args.method.label()) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return cli::EXIT_ERROR;
                }
            };
            let cfg = RunConfig {
                matrix_path: args.matrix_path,
                rhs_path: args.rhs_path,
                method,
                steps: args.steps,
                tol: args.tol,
                lambda1_override,
                g_tilde_path: args.g_tilde_path,
                x_exact_path: args.x_exact_path,
                admissibility: match args.admissibility {
                    AdmissibilityArg::Strict => Admissibility::Strict,
                    AdmissibilityArg::Warn => Admissibility::Warn,
                },
                trace_out: args.trace_out,
                x0: match args.x0 {
                    StartArg::Zero => StartingGuess::Zero,
                    StartArg::Random => StartingGuess::Random,
                },
                seed: args.seed,
            };
            cli::run_solve(&cfg)
        }
        Command::Analyze(args) => {
            let lambda1_override = match parse_lambda(args.lambda1_override) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return cli::EXIT_ERROR;
                }
            };
            cli::run_analyze(
                &args.matrix_path,
                &args.rhs_path,
                lambda1_override,
                args.empirical_steps,
            )
        }
        Command::Deltoid(args) => cli::run_deltoid(args.resolution, &args.out),
        Command::Repro(args) => cli::run_repro(args.self_test),
    }
}

fn main() -> ExitCode {
    ExitCode::from(run() as u8)
}
