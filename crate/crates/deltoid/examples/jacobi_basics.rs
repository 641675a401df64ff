//! Plain Jacobi iteration on a bundled 4x4 system.
//!
//! ```bash
//! cargo run -p deltoid --example jacobi_basics
//! ```

use deltoid::jacobi::{self, JacobiSplit};
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let system = repro::real_spectrum_system();
    let split = JacobiSplit::new(system.a.clone(), system.b.clone())?;

    println!("iteration matrix M = -D^(-1)(L + U):");
    for i in 0..split.dimension() {
        let row: Vec<String> = split
            .iter_matrix()
            .row(i)
            .iter()
            .map(|z| format!("{:+.6}", z.re))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    let trace = jacobi::iterate(&split, &DenseVector::zeros(4), 8, Some(&system.x_exact))?;
    println!("\n m | iterate                              | error norm");
    for m in 0..trace.len() {
        let x: Vec<String> = trace
            .iterate(m)
            .iter()
            .map(|z| format!("{:6.3}", z.re))
            .collect();
        println!(
            "{m:2} | {} | {:.3}",
            x.join(" "),
            trace.error_norms().unwrap()[m]
        );
    }
    println!("\nthe error contracts by roughly the spectral radius (1/2) per step");
    Ok(())
}
