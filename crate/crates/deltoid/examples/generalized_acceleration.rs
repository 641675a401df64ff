//! Deltoid-region acceleration of a system with complex eigenvalues.
//!
//! The classical accelerator assumes a real spectrum. This system's Jacobi
//! matrix has eigenvalues {-1/2, 1/10, 1/5 +- i/3}; every ratio against the
//! dominant -1/2 lies in the deltoid region, so the three-history
//! accelerator applies. It needs the companion pair (M~, g~), which the
//! operator builder derives from the spectrum.
//!
//! ```bash
//! cargo run -p deltoid --example generalized_acceleration
//! ```

use deltoid::gencheb::{self, GenChebOperator};
use deltoid::jacobi::{self, JacobiSplit};
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let system = repro::complex_spectrum_system();
    let split = JacobiSplit::new(system.a.clone(), system.b.clone())?;
    let op = GenChebOperator::from_split(split.clone())?;

    println!("dominant eigenvalue: {}", op.lambda1().re);
    println!("eigenvalue ratios against it all lie in the deltoid region");
    println!("\ncompanion matrix M~ (same eigenvalues, conjugated eigenvectors):");
    for i in 0..4 {
        let row: Vec<String> = op
            .m_tilde()
            .row(i)
            .iter()
            .map(|z| format!("{:+.6}", z.re))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    let x0 = DenseVector::zeros(4);
    let plain = jacobi::iterate(&split, &x0, 8, Some(&system.x_exact))?;
    let accelerated = gencheb::accelerate(&op, &x0, 8, Some(&system.x_exact))?;

    println!("\n m | plain error | accelerated error");
    for m in 0..=8 {
        println!(
            "{m:2} | {:11.3} | {:.3}",
            plain.error_norms().unwrap()[m],
            accelerated.error_norms().unwrap()[m]
        );
    }

    // Coefficient triples always sum to 1, which preserves the solution.
    let schedule = gencheb::coefficient_schedule(8, op.lambda1())?;
    let c = &schedule[0];
    println!(
        "\nfirst coefficient triple (m = {}): {:.6}, {:.6}, {:.6}",
        c.m, c.c1.re, c.c2.re, c.c3.re
    );
    Ok(())
}
