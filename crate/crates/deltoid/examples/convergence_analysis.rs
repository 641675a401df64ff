//! Full convergence analysis of both bundled systems.
//!
//! For each system: spectral radius, deltoid admissibility, the classical
//! and generalized limit factors along two routes (per-eigenvalue
//! polynomial roots and block companion spectral radii), and empirical
//! rates measured from actual runs.
//!
//! ```bash
//! cargo run -p deltoid --example convergence_analysis
//! ```

use deltoid::analysis;
use deltoid::chebyshev;
use deltoid::gencheb::GenChebOperator;
use deltoid::jacobi::JacobiSplit;
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    for system in repro::reference_systems() {
        println!("== {} ==", system.name);
        let split = JacobiSplit::new(system.a.clone(), system.b.clone())?;
        let report = analysis::convergence_report(&split, None)?;
        println!(
            "rho = {:.6}, lambda1 = {:.6}",
            report.rho, report.lambda1.re
        );
        println!(
            "admissible for the deltoid method: {}",
            if report.admissible { "yes" } else { "no" }
        );
        println!(
            "classical: mu_max = {:.6}, companion radius = {:.6}",
            report.mu_max_classical, report.companion_radius_classical
        );
        if let (Some(mu), Some(radius)) = (
            report.mu_max_generalized,
            report.companion_radius_generalized,
        ) {
            println!("generalized: mu_max = {mu:.6}, companion radius = {radius:.6}");
        }

        // Empirical rates from long traces.
        let x0 = DenseVector::zeros(split.dimension());
        let steps = 40;
        let cheb = chebyshev::accelerate(&split, report.rho, &x0, steps, Some(&system.x_exact))?;
        println!(
            "classical empirical rate (window 5..{}): {:.4}",
            steps - 1,
            analysis::empirical_rate(&cheb, 5, steps - 1)?
        );
        if report.admissible {
            let op = GenChebOperator::from_split(split.clone())?;
            let coeffs =
                analysis::abc_coefficients(analysis::alpha_from_lambda1(report.lambda1.re)?);
            let stationary =
                analysis::stationary_generalized(&op, &coeffs, &x0, steps, Some(&system.x_exact))?;
            println!(
                "generalized stationary empirical rate (window 5..{}): {:.4}",
                steps - 1,
                analysis::empirical_rate(&stationary, 5, steps - 1)?
            );
        }
        println!();
    }
    Ok(())
}
