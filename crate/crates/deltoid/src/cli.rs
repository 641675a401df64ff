//! Batch front end behind the `deltoid` binary.
//!
//! Four commands: `solve` runs one method on a system read from Matrix
//! Market files and emits a CSV trace, `analyze` prints the convergence
//! report, `deltoid` emits a membership grid of the stability region for
//! plotting, and `repro` replays the built-in reference tables.
//!
//! Exit codes are stable: 0 success, 1 hard error, 2 non-convergence.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis;
use crate::chebyshev;
use crate::eigen;
use crate::error::{Error, Result};
use crate::gencheb::{self, Admissibility, GenChebOperator, OperatorConfig};
use crate::io;
use crate::jacobi::{self, IterationTrace, JacobiSplit, Method};
use crate::linalg::{real, DenseMatrix, DenseVector, Scalar};
use crate::repro;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;

/// How `solve` builds the starting guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartingGuess {
    #[default]
    Zero,
    /// Uniform in [-1, 1) per component, reproducible from `seed`.
    Random,
}

/// Everything one `solve` run needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub matrix_path: PathBuf,
    pub rhs_path: PathBuf,
    pub method: Method,
    pub steps: usize,
    pub tol: f64,
    pub lambda1_override: Option<Scalar>,
    pub g_tilde_path: Option<PathBuf>,
    pub x_exact_path: Option<PathBuf>,
    pub admissibility: Admissibility,
    pub trace_out: Option<PathBuf>,
    pub x0: StartingGuess,
    pub seed: u64,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidConfig("steps must be >= 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        Ok(())
    }
}

fn method_from_label(label: &str) -> Result<Method> {
    match label {
        "jacobi" => Ok(Method::Jacobi),
        "chebyshev" => Ok(Method::Chebyshev),
        "gencheby" => Ok(Method::GenCheby),
        "stationary-classical" => Ok(Method::StationaryClassical),
        "stationary-generalized" => Ok(Method::StationaryGeneralized),
        other => Err(Error::InvalidConfig(format!("unknown method \"{other}\""))),
    }
}

/// Parses the CLI method label.
pub fn parse_method(label: &str) -> Result<Method> {
    method_from_label(label)
}

fn load_system(matrix_path: &Path, rhs_path: &Path) -> Result<(DenseMatrix, DenseVector)> {
    let a = io::read_matrix_market(matrix_path)?;
    let b = io::read_vector(rhs_path)?;
    Ok((a, b))
}

fn starting_guess(cfg: &RunConfig, n: usize) -> DenseVector {
    match cfg.x0 {
        StartingGuess::Zero => DenseVector::zeros(n),
        StartingGuess::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            DenseVector::new((0..n).map(|_| real(rng.gen_range(-1.0..1.0))).collect())
                .expect("finite by construction")
        }
    }
}

/// Spectral radius used by the classical routes: the override when given,
/// otherwise computed from the full spectrum.
fn resolve_rho(split: &JacobiSplit, lambda1_override: Option<Scalar>) -> Result<f64> {
    match lambda1_override {
        Some(lam) => Ok(lam.norm()),
        None => Ok(eigen::spectral_radius(&eigen::eigenvalues(
            split.iter_matrix(),
        )?)),
    }
}

fn run_method(cfg: &RunConfig, split: &JacobiSplit, x0: &DenseVector) -> Result<IterationTrace> {
    let x_exact = match &cfg.x_exact_path {
        Some(p) => Some(io::read_vector(p)?),
        None => None,
    };
    let x_exact_ref = x_exact.as_ref();
    match cfg.method {
        Method::Jacobi => jacobi::iterate(split, x0, cfg.steps, x_exact_ref),
        Method::Chebyshev => {
            let rho = resolve_rho(split, cfg.lambda1_override)?;
            if rho >= 1.0 {
                return Err(Error::DivergentSpectrum { radius: rho });
            }
            chebyshev::accelerate(split, rho, x0, cfg.steps, x_exact_ref)
        }
        Method::GenCheby => {
            let op = build_operator(cfg, split, x_exact_ref)?;
            match cfg.admissibility {
                Admissibility::Strict => gencheb::accelerate(&op, x0, cfg.steps, x_exact_ref),
                Admissibility::Warn => {
                    let offenders = op.offenders();
                    if !offenders.is_empty() {
                        eprintln!(
                            "warning: {} eigenvalue ratio(s) outside the deltoid region; \
                             proceeding anyway",
                            offenders.len()
                        );
                    }
                    gencheb::accelerate_unchecked(&op, x0, cfg.steps, x_exact_ref)
                }
            }
        }
        Method::StationaryClassical => {
            let rho = resolve_rho(split, cfg.lambda1_override)?;
            if rho >= 1.0 {
                return Err(Error::DivergentSpectrum { radius: rho });
            }
            let theta = analysis::theta_from_rho(rho)?;
            analysis::stationary_classical(split, theta, x0, cfg.steps, x_exact_ref)
        }
        Method::StationaryGeneralized => {
            let op = build_operator(cfg, split, x_exact_ref)?;
            let lambda1 = op.lambda1();
            if lambda1.im != 0.0 {
                return Err(Error::OutOfRange(
                    "stationary-generalized needs a real dominant eigenvalue".into(),
                ));
            }
            let coeffs = analysis::abc_coefficients(analysis::alpha_from_lambda1(lambda1.re)?);
            analysis::stationary_generalized(&op, &coeffs, x0, cfg.steps, x_exact_ref)
        }
    }
}

fn build_operator(
    cfg: &RunConfig,
    split: &JacobiSplit,
    x_exact: Option<&DenseVector>,
) -> Result<GenChebOperator> {
    let g_tilde = match &cfg.g_tilde_path {
        Some(p) => Some(io::read_vector(p)?),
        None => None,
    };
    GenChebOperator::with_config(
        split.clone(),
        OperatorConfig {
            lambda1: cfg.lambda1_override,
            g_tilde,
            x_exact: x_exact.cloned(),
            admissibility: cfg.admissibility,
            admissibility_tol: None,
        },
    )
}

/// Runs the configured method and writes the trace. Exit 0 when the
/// relative infinity-norm residual reaches `tol` within the run, 2 when it
/// does not, 1 on any error.
pub fn run_solve(cfg: &RunConfig) -> i32 {
    match solve_inner(cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn solve_inner(cfg: &RunConfig) -> Result<i32> {
    cfg.validate()?;
    let (a, b) = load_system(&cfg.matrix_path, &cfg.rhs_path)?;
    let split = JacobiSplit::new(a, b)?;
    let x0 = starting_guess(cfg, split.dimension());
    let trace = run_method(cfg, &split, &x0)?;

    // First iterate meeting the stopping rule.
    let mut converged_at = None;
    for m in 0..trace.len() {
        if split.relative_residual_inf(trace.iterate(m))? <= cfg.tol {
            converged_at = Some(m);
            break;
        }
    }
    if let Some(path) = &cfg.trace_out {
        io::write_trace_csv(path, &trace)?;
    }
    let last = trace.len() - 1;
    println!("method: {}", trace.method());
    println!("iterations: {last}");
    println!(
        "final residual (2-norm): {:e}",
        trace.residual_norms()[last]
    );
    println!(
        "final residual (relative inf-norm): {:e}",
        split.relative_residual_inf(trace.iterate(last))?
    );
    if let Some(errors) = trace.error_norms() {
        println!("final error norm: {:e}", errors[last]);
    }
    match converged_at {
        Some(m) => {
            println!(
                "converged: yes (tolerance {:e} first met at m = {m})",
                cfg.tol
            );
            Ok(EXIT_OK)
        }
        None => {
            println!(
                "converged: no (tolerance {:e} not met in {} steps)",
                cfg.tol, cfg.steps
            );
            Ok(EXIT_NO_CONVERGENCE)
        }
    }
}

/// Prints the convergence report; optionally runs traces for empirical
/// rates. Exit 0 on success, 1 on error (including a divergent spectrum).
pub fn run_analyze(
    matrix_path: &Path,
    rhs_path: &Path,
    lambda1_override: Option<Scalar>,
    empirical_steps: Option<usize>,
) -> i32 {
    match analyze_inner(matrix_path, rhs_path, lambda1_override, empirical_steps) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn analyze_inner(
    matrix_path: &Path,
    rhs_path: &Path,
    lambda1_override: Option<Scalar>,
    empirical_steps: Option<usize>,
) -> Result<()> {
    let (a, b) = load_system(matrix_path, rhs_path)?;
    let split = JacobiSplit::new(a, b)?;
    let report = analysis::convergence_report(&split, lambda1_override)?;

    println!("spectral radius rho: {}", report.rho);
    println!(
        "dominant eigenvalue lambda1: {}",
        io::format_scalar(report.lambda1)
    );
    if report.admissible {
        println!("deltoid admissibility: all eigenvalue ratios inside");
    } else {
        let offenders: Vec<String> = report
            .offenders
            .iter()
            .map(|z| io::format_scalar(*z))
            .collect();
        println!(
            "deltoid admissibility: VIOLATED by eigenvalue(s) {}",
            offenders.join(", ")
        );
    }
    println!("theta: {}", report.theta);
    println!("mu_max (classical): {}", report.mu_max_classical);
    println!(
        "companion spectral radius (classical): {}",
        report.companion_radius_classical
    );
    match (&report.alpha, &report.coefficients) {
        (Some(alpha), Some(coeffs)) => {
            println!("alpha: {}", io::format_scalar(*alpha));
            println!(
                "a, b, c: {}, {}, {}",
                io::format_scalar(coeffs.a),
                io::format_scalar(coeffs.b),
                io::format_scalar(coeffs.c)
            );
            println!(
                "mu_max (generalized): {}",
                report
                    .mu_max_generalized
                    .expect("present with coefficients")
            );
            println!(
                "companion spectral radius (generalized): {}",
                report
                    .companion_radius_generalized
                    .expect("present with coefficients")
            );
        }
        _ => println!("generalized asymptotics: n/a (dominant eigenvalue not real)"),
    }
    println!("per-eigenvalue limit roots:");
    for entry in &report.per_eigenvalue {
        let quad: Vec<String> = entry
            .quadratic
            .iter()
            .map(|z| io::format_scalar(*z))
            .collect();
        match &entry.cubic {
            Some(cubic) => {
                let cub: Vec<String> = cubic.iter().map(|z| io::format_scalar(*z)).collect();
                println!(
                    "  lambda = {}: quadratic [{}], cubic [{}]",
                    io::format_scalar(entry.lambda),
                    quad.join(", "),
                    cub.join(", ")
                );
            }
            None => println!(
                "  lambda = {}: quadratic [{}]",
                io::format_scalar(entry.lambda),
                quad.join(", ")
            ),
        }
    }

    if let Some(steps) = empirical_steps {
        // Error norms need the exact solution; one direct solve provides it.
        let x_exact = split.matrix().lu()?.solve(split.rhs())?;
        let x0 = DenseVector::zeros(split.dimension());
        println!("empirical rates over {steps} steps (window opens after the seeds):");
        let jt = jacobi::iterate(&split, &x0, steps, Some(&x_exact))?;
        print_rate("jacobi", &jt, 1, steps);
        if report.rho < 1.0 {
            let ct = chebyshev::accelerate(&split, report.rho, &x0, steps, Some(&x_exact))?;
            print_rate("chebyshev", &ct, 2, steps);
        }
        if report.admissible && report.lambda1.im == 0.0 {
            let op = GenChebOperator::with_config(
                split.clone(),
                OperatorConfig {
                    lambda1: lambda1_override,
                    x_exact: Some(x_exact.clone()),
                    ..OperatorConfig::default()
                },
            )?;
            let gt = gencheb::accelerate(&op, &x0, steps, Some(&x_exact))?;
            print_rate("gencheby", &gt, 3, steps);
        }
    }
    Ok(())
}

fn print_rate(label: &str, trace: &IterationTrace, window_start: usize, steps: usize) {
    match analysis::empirical_rate(trace, window_start, steps.saturating_sub(1)) {
        Ok(rate) => println!("  {label}: {rate}"),
        Err(_) => println!("  {label}: n/a (window exhausted)"),
    }
}

/// Writes the deltoid membership grid over [-1.2, 1.2]^2 as CSV rows
/// `x,y,inside`. Exit 0 on success.
pub fn run_deltoid(resolution: usize, out: &Path) -> i32 {
    match deltoid_inner(resolution, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn deltoid_inner(resolution: usize, out: &Path) -> Result<()> {
    if resolution < 2 {
        return Err(Error::InvalidConfig("resolution must be >= 2".into()));
    }
    let mut content = String::from("x,y,inside\n");
    let mut inside_count = 0usize;
    let coord = |k: usize| -1.2 + 2.4 * (k as f64) / ((resolution - 1) as f64);
    for j in 0..resolution {
        let y = coord(j);
        for i in 0..resolution {
            let x = coord(i);
            let inside = gencheb::deltoid_contains(Scalar::new(x, y), 0.0);
            inside_count += inside as usize;
            content.push_str(&format!("{x},{y},{}\n", inside as u8));
        }
    }
    std::fs::write(out, content)?;
    let fraction = inside_count as f64 / (resolution * resolution) as f64;
    println!(
        "wrote {resolution}x{resolution} grid to {}; inside fraction {fraction:.4}",
        out.display()
    );
    Ok(())
}

/// Replays the built-in reference tables and prints a pass/fail matrix.
///
/// Normal mode exits 0 only if every stored entry reproduces within the
/// table tolerance. Self-test mode perturbs the first matrix entry and
/// exits 0 only if the comparison catches the deviation.
pub fn run_repro(self_test: bool) -> i32 {
    match repro::run_reference_checks(self_test) {
        Ok(checks) => {
            println!("{:<42} {:>5}  verdict", "table", "rows");
            let mut all_pass = true;
            for check in &checks {
                let ok_rows = check.rows.iter().filter(|&&r| r).count();
                let verdict = if check.passed() { "PASS" } else { "FAIL" };
                all_pass &= check.passed();
                println!(
                    "{:<42} {:>2}/{:<2}  {verdict} (max deviation {:.2e})",
                    format!("{} / {}", check.system, check.method),
                    ok_rows,
                    check.rows.len(),
                    check.max_deviation
                );
            }
            if self_test {
                if all_pass {
                    eprintln!("self-test: perturbation was NOT detected");
                    EXIT_ERROR
                } else {
                    println!("self-test: perturbation detected as expected");
                    EXIT_OK
                }
            } else if all_pass {
                EXIT_OK
            } else {
                EXIT_ERROR
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::fixtures::system_one;

    fn write_system(dir: &Path) -> (PathBuf, PathBuf) {
        let split = system_one();
        let a_path = dir.join("a.mtx");
        let b_path = dir.join("b.mtx");
        io::write_matrix_market(&a_path, split.matrix()).unwrap();
        io::write_vector(&b_path, split.rhs()).unwrap();
        (a_path, b_path)
    }

    fn base_config(a: PathBuf, b: PathBuf) -> RunConfig {
        RunConfig {
            matrix_path: a,
            rhs_path: b,
            method: Method::Jacobi,
            steps: 60,
            tol: 1e-10,
            lambda1_override: None,
            g_tilde_path: None,
            x_exact_path: None,
            admissibility: Admissibility::Strict,
            trace_out: None,
            x0: StartingGuess::Zero,
            seed: 0,
        }
    }

    #[test]
    fn solve_converges_and_writes_trace() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = write_system(dir.path());
        let trace_path = dir.path().join("trace.csv");
        let mut cfg = base_config(a, b);
        cfg.trace_out = Some(trace_path.clone());
        assert_eq!(run_solve(&cfg), EXIT_OK);
        let (residuals, _) = io::read_trace_norms(&trace_path).unwrap();
        assert_eq!(residuals.len(), 61);
    }

    #[test]
    fn solve_rejects_zero_steps() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = write_system(dir.path());
        let mut cfg = base_config(a, b);
        cfg.steps = 0;
        assert_eq!(run_solve(&cfg), EXIT_ERROR);
    }

    #[test]
    fn solve_reports_non_convergence() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = write_system(dir.path());
        let mut cfg = base_config(a, b);
        cfg.steps = 3; // not enough for 1e-10
        assert_eq!(run_solve(&cfg), EXIT_NO_CONVERGENCE);
    }

    #[test]
    fn random_start_is_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = write_system(dir.path());
        let mut cfg = base_config(a, b);
        cfg.x0 = StartingGuess::Random;
        cfg.seed = 42;
        let g1 = starting_guess(&cfg, 4);
        let g2 = starting_guess(&cfg, 4);
        assert_eq!(g1, g2);
        cfg.seed = 43;
        assert_ne!(starting_guess(&cfg, 4), g1);
    }

    #[test]
    fn method_labels_parse() {
        for m in [
            Method::Jacobi,
            Method::Chebyshev,
            Method::GenCheby,
            Method::StationaryClassical,
            Method::StationaryGeneralized,
        ] {
            assert_eq!(parse_method(m.label()).unwrap(), m);
        }
        assert!(parse_method("sor").is_err());
    }

    #[test]
    fn repro_passes_and_self_test_detects() {
        assert_eq!(run_repro(false), EXIT_OK);
        assert_eq!(run_repro(true), EXIT_OK);
    }
}
