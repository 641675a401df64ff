//! The deltoid stability region and its invariance.
//!
//! The region is the image of the generalized cosine over real arguments: a
//! Steiner hypocycloid with corners at the third roots of unity. It plays
//! the role the interval [-1, 1] plays for classical Chebyshev polynomials:
//! the whole polynomial family maps it into itself.
//!
//! ```bash
//! cargo run -p deltoid --example deltoid_region
//! ```

use deltoid::gencheb;
use deltoid::linalg::{real, scalar};

fn main() {
    println!("membership (expression <= 4):");
    for (label, z) in [
        ("origin", real(0.0)),
        ("corner 1", real(1.0)),
        ("corner e^(2 pi i/3)", scalar(-0.5, 3.0_f64.sqrt() / 2.0)),
        ("waist -1/3", real(-1.0 / 3.0)),
        ("outside -0.4", real(-0.4)),
        ("outside 2", real(2.0)),
    ] {
        println!(
            "  {label:>20}: expression = {:.6}, inside = {}",
            gencheb::deltoid_expression(z),
            gencheb::deltoid_contains(z, 1e-12)
        );
    }

    // The generalized cosine parametrizes the region.
    println!("\nboundary samples from the generalized cosine (diagonal slice):");
    for k in 0..6 {
        let t = k as f64 / 6.0;
        let z = gencheb::generalized_cosine(t, t);
        println!("  t = {t:.3}: z = {:+.4} {:+.4}i", z.re, z.im);
    }

    // Invariance: iterating the polynomial family keeps points inside.
    let z = scalar(0.3, 0.25);
    println!("\norbit of {z} under the polynomial family:");
    for m in 1..=6 {
        let image = gencheb::evaluate(m, z);
        println!(
            "  degree {m}: {:+.4} {:+.4}i (inside: {})",
            image.re,
            image.im,
            gencheb::deltoid_contains(image, 1e-9)
        );
    }

    // ASCII picture, 33x33 grid over [-1.2, 1.2]^2.
    println!("\nregion at a glance:");
    let n = 33;
    for j in (0..n).rev() {
        let y = -1.2 + 2.4 * j as f64 / (n - 1) as f64;
        let row: String = (0..n)
            .map(|i| {
                let x = -1.2 + 2.4 * i as f64 / (n - 1) as f64;
                if gencheb::deltoid_contains(scalar(x, y), 0.0) {
                    '#'
                } else {
                    '.'
                }
            })
            .collect();
        println!("  {row}");
    }
}
