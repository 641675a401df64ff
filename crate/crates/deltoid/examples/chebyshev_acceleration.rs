//! Classical Chebyshev acceleration against plain Jacobi.
//!
//! The accelerator only needs the spectral radius of the iteration matrix;
//! its two-history recurrence drives the error down like e^(-theta) instead
//! of rho per step.
//!
//! ```bash
//! cargo run -p deltoid --example chebyshev_acceleration
//! ```

use deltoid::analysis;
use deltoid::chebyshev;
use deltoid::jacobi::{self, JacobiSplit};
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let system = repro::real_spectrum_system();
    let split = JacobiSplit::new(system.a.clone(), system.b.clone())?;
    let rho = 0.5;
    let x0 = DenseVector::zeros(4);

    let plain = jacobi::iterate(&split, &x0, 8, Some(&system.x_exact))?;
    let accelerated = chebyshev::accelerate(&split, rho, &x0, 8, Some(&system.x_exact))?;

    println!(" m | plain error | accelerated error");
    for m in 0..=8 {
        println!(
            "{m:2} | {:11.3} | {:.3}",
            plain.error_norms().unwrap()[m],
            accelerated.error_norms().unwrap()[m]
        );
    }

    let theta = analysis::theta_from_rho(rho)?;
    println!("\ntheta = acosh(1/rho) = {theta:.4}");
    println!(
        "asymptotic factor e^(-theta) = {:.4} (plain Jacobi contracts by {rho})",
        analysis::mu_max_classical(rho)?
    );

    // The per-step coefficients converge to the stationary pair.
    let schedule = chebyshev::coefficient_schedule(8, deltoid::linalg::real(1.0 / rho))?;
    let last = schedule.last().unwrap();
    println!(
        "coefficients at m = {}: c1 = {:.6}, c2 = {:.6} (sum = 1)",
        last.m, last.c1.re, last.c2.re
    );
    Ok(())
}
