//! Matrix Market file I/O and CSV trace export.
//!
//! ```bash
//! cargo run -p deltoid --example matrix_market_io
//! ```

use deltoid::io;
use deltoid::jacobi::{self, JacobiSplit};
use deltoid::linalg::DenseVector;
use deltoid::repro;

fn main() -> deltoid::Result<()> {
    let dir = std::env::temp_dir().join("deltoid_io_example");
    std::fs::create_dir_all(&dir)?;

    // Write a system out and read it back.
    let system = repro::real_spectrum_system();
    let a_path = dir.join("a.mtx");
    let b_path = dir.join("b.mtx");
    io::write_matrix_market(&a_path, &system.a)?;
    io::write_vector(&b_path, &system.b)?;
    let a = io::read_matrix_market(&a_path)?;
    let b = io::read_vector(&b_path)?;
    println!(
        "round-tripped a {}x{} system through {}",
        a.rows(),
        a.cols(),
        dir.display()
    );

    // Coordinate-layout input works too.
    let coo = "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 4\n2 2 4\n3 3 4\n";
    let sparse_style = io::read_matrix_market_str(coo)?;
    println!(
        "coordinate file read as dense: trace = {}",
        (0..3).map(|i| sparse_style.get(i, i).re).sum::<f64>()
    );

    // Run a few steps and export the trace as CSV.
    let split = JacobiSplit::new(a, b)?;
    let trace = jacobi::iterate(&split, &DenseVector::zeros(4), 5, Some(&system.x_exact))?;
    let trace_path = dir.join("trace.csv");
    io::write_trace_csv(&trace_path, &trace)?;
    println!("trace written to {}:", trace_path.display());
    for line in io::trace_to_csv(&trace).lines().take(3) {
        println!("  {line}");
    }

    // Complex scalars use re[+|-]imi notation on the command line.
    let z = io::parse_scalar("0.2+0.333333i")?;
    println!("parsed scalar: re = {}, im = {}", z.re, z.im);
    Ok(())
}
