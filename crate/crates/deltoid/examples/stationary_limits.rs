//! The stationary recurrences both accelerators settle into.
//!
//! Far from the start the Chebyshev coefficient schedules converge, and the
//! accelerators become fixed-coefficient iterations whose contraction is
//! the spectral radius of a block companion matrix. This example runs the
//! stationary forms directly and compares the measured rates against those
//! radii.
//!
//! ```bash
//! cargo run -p deltoid --example stationary_limits
//! ```

use deltoid::analysis;
use deltoid::eigen;
use deltoid::gencheb::{self, GenChebOperator};
use deltoid::jacobi::JacobiSplit;
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let steps = 42;

    // Classical limit on the real-spectrum system.
    let system1 = repro::real_spectrum_system();
    let split1 = JacobiSplit::new(system1.a.clone(), system1.b.clone())?;
    let theta = analysis::theta_from_rho(0.5)?;
    let block = analysis::companion_classical(split1.iter_matrix(), theta);
    let radius = analysis::clustered_max_modulus(&eigen::eigenvalues(&block)?);
    let trace = analysis::stationary_classical(
        &split1,
        theta,
        &DenseVector::zeros(4),
        steps,
        Some(&system1.x_exact),
    )?;
    let rate = analysis::empirical_rate(&trace, 5, steps - 2)?;
    println!("classical limit: companion radius {radius:.6}, measured rate {rate:.6}");
    println!("(rates approach the radius from above: the limit eigenvalue is repeated,");
    println!(" which adds a slowly decaying polynomial factor to the error)");

    // Generalized limit on the complex-spectrum system.
    let system2 = repro::complex_spectrum_system();
    let split2 = JacobiSplit::new(system2.a.clone(), system2.b.clone())?;
    let op = GenChebOperator::from_split(split2.clone())?;
    let alpha = analysis::alpha_from_lambda1(op.lambda1().re)?;
    let coeffs = analysis::abc_coefficients(alpha);
    println!(
        "alpha = {:.6} + {:.6}i gives (a, b, c) = ({:.6}, {:.6}, {:.6})",
        alpha.re, alpha.im, coeffs.a.re, coeffs.b.re, coeffs.c.re
    );
    let spectrum = eigen::eigenpairs(split2.iter_matrix())?;
    let m_tilde = gencheb::conjugate_companion(&spectrum)?;
    let block = analysis::companion_generalized(split2.iter_matrix(), &m_tilde, &coeffs)?;
    let radius = analysis::clustered_max_modulus(&eigen::eigenvalues(&block)?);
    let trace = analysis::stationary_generalized(
        &op,
        &coeffs,
        &DenseVector::zeros(4),
        steps,
        Some(&system2.x_exact),
    )?;
    let rate = analysis::empirical_rate(&trace, 5, steps - 2)?;
    println!("generalized limit: companion radius {radius:.6}, measured rate {rate:.6}");
    println!(
        "improvement over the classical factor: {radius:.4} vs {:.4}",
        analysis::mu_max_classical(0.5)?
    );
    Ok(())
}
