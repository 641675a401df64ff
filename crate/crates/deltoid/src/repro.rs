//! Built-in reference problems with stored convergence tables.
//!
//! Two 4x4 systems with integer entries and exact solution (1,1,1,1) ship
//! with the crate: one with a purely real Jacobi spectrum {-1/2, 1/4, 1/6,
//! 1/12} for the classical accelerator, one with a complex pair {-1/2,
//! 1/10, 1/5 +- i/3} for the deltoid accelerator. For each system the first
//! nine iterates and error norms of the plain and accelerated runs are
//! stored to three decimals; `run_reference_checks` replays all four runs
//! and compares every stored entry at +-5e-3 (the stored values are
//! truncated, not rounded).

use crate::chebyshev;
use crate::error::Result;
use crate::gencheb::{self, GenChebOperator};
use crate::jacobi::{self, JacobiSplit, Method};
use crate::linalg::{DenseMatrix, DenseVector};

/// Absolute tolerance for comparisons against the 3-decimal stored tables.
pub const TABLE_TOL: f64 = 5e-3;

/// One stored table row: iterate components and the error norm.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub iterate: [f64; 4],
    pub error_norm: f64,
}

/// A reference system together with its two stored tables.
#[derive(Debug, Clone)]
pub struct ReferenceSystem {
    pub name: &'static str,
    pub a: DenseMatrix,
    pub b: DenseVector,
    pub x_exact: DenseVector,
    pub accel_method: Method,
    pub jacobi_table: Vec<TableRow>,
    pub accel_table: Vec<TableRow>,
}

fn row(iterate: [f64; 4], error_norm: f64) -> TableRow {
    TableRow {
        iterate,
        error_norm,
    }
}

/// System with real spectrum; accelerated by the classical Chebyshev method.
pub fn real_spectrum_system() -> ReferenceSystem {
    let a = DenseMatrix::from_real_rows(&[
        &[576.0, 0.0, 0.0, 1.0],
        &[144.0, 144.0, 0.0, 5.0],
        &[0.0, 144.0, 144.0, 25.0],
        &[0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap();
    let b = DenseVector::from_real(&[577.0, 293.0, 313.0, 2.0]).unwrap();
    ReferenceSystem {
        name: "real-spectrum 4x4",
        a,
        b,
        x_exact: DenseVector::from_real(&[1.0; 4]).unwrap(),
        accel_method: Method::Chebyshev,
        jacobi_table: vec![
            row([0.0, 0.0, 0.0, 0.0], 2.000),
            row([1.001, 2.034, 2.173, 2.000], 1.856),
            row([0.998, 0.963, -0.208, -0.173], 1.684),
            row([1.002, 1.042, 1.240, 2.208], 1.232),
            row([0.997, 0.956, 0.747, 0.759], 0.351),
            row([1.000, 1.010, 1.085, 1.252], 0.266),
            row([0.999, 0.990, 0.945, 0.914], 0.101),
            row([1.000, 1.003, 1.024, 1.054], 0.059),
            row([0.999, 0.997, 0.987, 0.975], 0.027),
        ],
        accel_table: vec![
            row([0.0, 0.0, 0.0, 0.0], 2.000),
            row([1.001, 2.034, 2.173, 2.000], 1.856),
            row([1.140, 1.101, -0.238, -0.198], 1.731),
            row([1.002, 0.813, 1.024, 2.256], 1.270),
            row([0.987, 0.943, 1.055, 1.059], 0.099),
            row([0.999, 1.024, 1.047, 0.850], 0.158),
            row([1.001, 1.009, 0.997, 0.944], 0.056),
            row([1.000, 0.999, 0.996, 1.013], 0.013),
            row([0.999, 0.998, 0.998, 1.007], 0.008),
        ],
    }
}

/// System with a complex conjugate pair; accelerated by the deltoid method.
pub fn complex_spectrum_system() -> ReferenceSystem {
    let a = DenseMatrix::from_real_rows(&[
        &[2250.0, 0.0, 0.0, 17.0],
        &[2250.0, 2250.0, 0.0, 181.0],
        &[0.0, 900.0, 900.0, 53.0],
        &[0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap();
    let b = DenseVector::from_real(&[2267.0, 4681.0, 1853.0, 2.0]).unwrap();
    ReferenceSystem {
        name: "complex-spectrum 4x4",
        a,
        b,
        x_exact: DenseVector::from_real(&[1.0; 4]).unwrap(),
        accel_method: Method::GenCheby,
        jacobi_table: vec![
            row([0.0, 0.0, 0.0, 0.0], 2.000),
            row([1.007, 2.080, 2.058, 2.000], 1.813),
            row([0.992, 0.912, -0.139, -0.058], 1.557),
            row([1.008, 1.092, 1.150, 2.139], 1.152),
            row([0.991, 0.900, 0.840, 0.849], 0.241),
            row([1.001, 1.020, 1.108, 1.159], 0.194),
            row([0.998, 0.986, 0.969, 0.891], 0.113),
            row([1.000, 1.009, 1.020, 1.030], 0.037),
            row([0.999, 0.996, 0.988, 0.979], 0.023),
        ],
        accel_table: vec![
            row([0.0, 0.0, 0.0, 0.0], 2.000),
            row([1.007, 2.080, 2.0588, 2.000], 1.813),
            row([0.992, 0.912, -0.139, -0.058], 1.557),
            row([1.013, 1.074, 1.118, 1.758], 0.771),
            row([0.997, 0.960, 0.933, 0.924], 0.108),
            row([1.000, 1.004, 1.019, 1.031], 0.037),
            row([0.999, 0.998, 0.997, 0.992], 0.008),
            row([1.000, 1.000, 1.000, 1.001], 0.001),
            row([0.999, 0.999, 0.999, 0.999], 0.000),
        ],
    }
}

pub fn reference_systems() -> Vec<ReferenceSystem> {
    vec![real_spectrum_system(), complex_spectrum_system()]
}

/// Outcome of one table comparison.
#[derive(Debug, Clone)]
pub struct TableCheck {
    pub system: &'static str,
    pub method: Method,
    /// Per-row verdicts, one per table row.
    pub rows: Vec<bool>,
    /// Largest absolute deviation seen across all compared entries.
    pub max_deviation: f64,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|&ok| ok)
    }
}

/// Replays all four stored tables. `perturb` nudges one matrix entry first,
/// as a self-test that the comparison actually detects deviations.
pub fn run_reference_checks(perturb: bool) -> Result<Vec<TableCheck>> {
    let mut out = Vec::new();
    for system in reference_systems() {
        let mut a = system.a.clone();
        if perturb {
            let bumped = a.get(1, 0) + crate::linalg::real(0.05 * a.max_abs_entry());
            a.set(1, 0, bumped);
        }
        let split = JacobiSplit::new(a, system.b.clone())?;
        let steps = system.jacobi_table.len() - 1;
        let x0 = DenseVector::zeros(split.dimension());

        let jacobi_trace = jacobi::iterate(&split, &x0, steps, Some(&system.x_exact))?;
        out.push(compare_table(
            system.name,
            Method::Jacobi,
            &jacobi_trace,
            &system.jacobi_table,
        ));

        let accel_trace = match system.accel_method {
            Method::Chebyshev => {
                chebyshev::accelerate(&split, 0.5, &x0, steps, Some(&system.x_exact))?
            }
            Method::GenCheby => {
                let op = GenChebOperator::from_split(split.clone())?;
                gencheb::accelerate(&op, &x0, steps, Some(&system.x_exact))?
            }
            _ => unreachable!("reference systems use an accelerated method"),
        };
        out.push(compare_table(
            system.name,
            system.accel_method,
            &accel_trace,
            &system.accel_table,
        ));
    }
    Ok(out)
}

fn compare_table(
    system: &'static str,
    method: Method,
    trace: &jacobi::IterationTrace,
    table: &[TableRow],
) -> TableCheck {
    let errors = trace
        .error_norms()
        .expect("reference runs carry the exact solution");
    let mut rows = Vec::with_capacity(table.len());
    let mut max_deviation = 0.0_f64;
    for (m, expected) in table.iter().enumerate() {
        let mut row_dev = (errors[m] - expected.error_norm).abs();
        for (got, want) in trace.iterate(m).iter().zip(expected.iterate) {
            row_dev = row_dev.max((got.re - want).abs()).max(got.im.abs());
        }
        max_deviation = max_deviation.max(row_dev);
        rows.push(row_dev <= TABLE_TOL);
    }
    TableCheck {
        system,
        method,
        rows,
        max_deviation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Instant;

    #[test]
    fn all_tables_reproduce() {
        let start = Instant::now();
        let checks = run_reference_checks(false).unwrap();
        assert_eq!(checks.len(), 4);
        for check in &checks {
            assert!(
                check.passed(),
                "{} / {} deviated by {}",
                check.system,
                check.method,
                check.max_deviation
            );
            assert_eq!(check.rows.len(), 9);
        }
        // Desk-scale problem: the whole replay stays far under a second.
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }

    #[test]
    fn perturbation_is_detected() {
        let checks = run_reference_checks(true).unwrap();
        assert!(
            checks.iter().any(|c| !c.passed()),
            "perturbed matrix slipped through the comparison"
        );
    }

    #[test]
    fn systems_have_unit_solutions() {
        for system in reference_systems() {
            let x = system.a.lu().unwrap().solve(&system.b).unwrap();
            for xi in x.iter() {
                assert!((xi.re - 1.0).abs() < 1e-12);
            }
        }
    }
}
