//! Spectrum computation for small unsymmetric matrices.
//!
//! ```bash
//! cargo run -p deltoid --example eigen_spectrum
//! ```

use deltoid::eigen;
use deltoid::io::format_scalar;
use deltoid::jacobi::JacobiSplit;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let system = repro::complex_spectrum_system();
    let split = JacobiSplit::new(system.a.clone(), system.b.clone())?;
    let m = split.iter_matrix();

    let (h, q) = eigen::hessenberg(m)?;
    let similarity = q
        .transpose()
        .mul_mat(m)?
        .mul_mat(&q)?
        .sub(&h)?
        .frobenius_norm();
    println!("Hessenberg reduction residual |Q^T M Q - H| = {similarity:.2e}");

    let spectrum = eigen::eigenpairs(m)?;
    println!("eigenvalues (conjugate pairs adjacent):");
    for (j, lam) in spectrum.eigenvalues().iter().enumerate() {
        let v = spectrum.eigenvector(j);
        let residual = m.mul_vec(&v)?.sub(&v.scale(*lam)).norm2();
        println!(
            "  lambda_{j} = {:>24}  |M v - lambda v| = {residual:.2e}  partner: {}",
            format_scalar(*lam),
            spectrum.pairing()[j]
        );
    }

    let dominant = eigen::dominant_eigenvalue(&spectrum)?;
    println!("dominant eigenvalue: {}", format_scalar(dominant));
    println!("spectral radius: {}", spectrum.spectral_radius());

    // Expansion of an error vector over the eigenvector basis.
    let e0 = deltoid::linalg::DenseVector::from_real(&[1.0, 1.0, 1.0, 1.0])?;
    let coords = spectrum.coordinates(&e0)?;
    println!("coordinates of (1,1,1,1) in the eigenvector basis:");
    for (j, alpha) in coords.alphas().iter().enumerate() {
        println!("  alpha_{j} = {}", format_scalar(*alpha));
    }
    Ok(())
}
