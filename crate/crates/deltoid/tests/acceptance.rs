//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible under `--nocapture`; the test verdicts carry the same result).
//!
//! Criteria 1-4 replay the stored reference tables, 5-7 pin the spectra and
//! limit factors, 8 checks windowed empirical rates, 9 is the property
//! battery, 10 the negative controls and 11 the `repro` subcommand.
//!
//! Criterion 8 is a KNOWN FAILURE, kept asserting its stated tolerances to
//! document the gap; see the comment on that test for the full analysis.

use std::process::Command;
use std::time::Instant;

use deltoid::analysis;
use deltoid::chebyshev;
use deltoid::eigen;
use deltoid::error::Error;
use deltoid::gencheb::{self, GenChebOperator};
use deltoid::jacobi::{self, JacobiSplit};
use deltoid::linalg::{real, scalar, DenseMatrix, DenseVector, Scalar};
use deltoid::repro::{self, ReferenceSystem};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_TOL: f64 = 5e-3;

fn verdict(criterion: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion}: {detail}");
}

fn split_of(system: &ReferenceSystem) -> JacobiSplit {
    JacobiSplit::new(system.a.clone(), system.b.clone()).unwrap()
}

fn ones(n: usize) -> DenseVector {
    DenseVector::from_real(&vec![1.0; n]).unwrap()
}

fn max_table_deviation(
    trace: &jacobi::IterationTrace,
    table: &[repro::TableRow],
    check_iterates: bool,
) -> f64 {
    let errors = trace.error_norms().unwrap();
    let mut dev = 0.0_f64;
    for (m, row) in table.iter().enumerate() {
        dev = dev.max((errors[m] - row.error_norm).abs());
        if check_iterates {
            for (got, want) in trace.iterate(m).iter().zip(row.iterate) {
                dev = dev.max((got.re - want).abs()).max(got.im.abs());
            }
        }
    }
    dev
}

#[test]
fn criterion_01_first_system_jacobi_table() {
    let system = repro::real_spectrum_system();
    let split = split_of(&system);
    let start = Instant::now();
    let trace = jacobi::iterate(&split, &DenseVector::zeros(4), 8, Some(&system.x_exact)).unwrap();
    let dev = max_table_deviation(&trace, &system.jacobi_table, false);
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "1",
        dev <= TABLE_TOL && elapsed < 0.1,
        &format!("9 error norms within 5e-3 (max dev {dev:.2e}), runtime {elapsed:.4}s < 0.1s"),
    );
}

#[test]
fn criterion_02_first_system_chebyshev_table() {
    let system = repro::real_spectrum_system();
    let split = split_of(&system);
    let trace = chebyshev::accelerate(
        &split,
        0.5,
        &DenseVector::zeros(4),
        8,
        Some(&system.x_exact),
    )
    .unwrap();
    let dev = max_table_deviation(&trace, &system.accel_table, true);
    verdict(
        "2",
        dev <= TABLE_TOL,
        &format!("9 error norms and the m=2 iterate within 5e-3 (max dev {dev:.2e})"),
    );
}

#[test]
fn criterion_03_second_system_jacobi_table() {
    let system = repro::complex_spectrum_system();
    let split = split_of(&system);
    let trace = jacobi::iterate(&split, &DenseVector::zeros(4), 8, Some(&system.x_exact)).unwrap();
    let dev = max_table_deviation(&trace, &system.jacobi_table, false);
    verdict(
        "3",
        dev <= TABLE_TOL,
        &format!("9 error norms within 5e-3 (max dev {dev:.2e})"),
    );
}

#[test]
fn criterion_04_second_system_generalized_table() {
    let system = repro::complex_spectrum_system();
    let split = split_of(&system);
    let op = GenChebOperator::from_split(split).unwrap();
    let trace = gencheb::accelerate(&op, &DenseVector::zeros(4), 8, Some(&system.x_exact)).unwrap();
    let dev = max_table_deviation(&trace, &system.accel_table, true);
    let eta8 = trace.error_norms().unwrap()[8];
    verdict(
        "4",
        dev <= TABLE_TOL && eta8 <= 5e-4,
        &format!(
            "9 error norms and the m=3 iterate within 5e-3 (max dev {dev:.2e}), \
             final error {eta8:.2e} <= 5e-4"
        ),
    );
}

#[test]
fn criterion_05_eigensolver_reproduces_both_spectra() {
    let expected_one = [real(-0.5), real(0.25), real(1.0 / 6.0), real(1.0 / 12.0)];
    let expected_two = [
        real(-0.5),
        real(0.1),
        scalar(0.2, 1.0 / 3.0),
        scalar(0.2, -1.0 / 3.0),
    ];
    let mut worst = 0.0_f64;
    for (system, expected) in [
        (repro::real_spectrum_system(), expected_one.as_slice()),
        (repro::complex_spectrum_system(), expected_two.as_slice()),
    ] {
        let split = split_of(&system);
        let eigs = eigen::eigenvalues(split.iter_matrix()).unwrap();
        for want in expected {
            let best = eigs
                .iter()
                .map(|got| (got - want).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
    }
    verdict(
        "5",
        worst <= 1e-9,
        &format!("printed spectra matched within 1e-9 (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_06_classical_asymptotics() {
    let theta = analysis::theta_from_rho(0.5).unwrap();
    let exact = (2.0 + 3.0_f64.sqrt()).ln();
    let theta_ok = (theta - exact).abs() <= 1e-12 && (theta - 1.3169579).abs() <= 1e-7;
    let mu = analysis::mu_max_classical(0.5).unwrap();
    let mu_ok = (mu - (2.0 - 3.0_f64.sqrt())).abs() <= 1e-12;
    let system = repro::real_spectrum_system();
    let split = split_of(&system);
    let block = analysis::companion_classical(split.iter_matrix(), theta);
    let radius = analysis::clustered_max_modulus(&eigen::eigenvalues(&block).unwrap());
    let radius_ok = (radius - mu).abs() <= 1e-6;
    verdict(
        "6",
        theta_ok && mu_ok && radius_ok,
        &format!(
            "theta = {theta} (= ln(2+sqrt 3) to 1e-12), mu_max = {mu} (= 2-sqrt(3) to 1e-12), \
             companion radius {radius} within 1e-6"
        ),
    );
}

#[test]
fn criterion_07_generalized_asymptotics() {
    let alpha = analysis::alpha_from_lambda1(-0.5).unwrap();
    let exact_re = (3.5 + 11.25_f64.sqrt()).ln();
    let alpha_ok = (alpha.re - 1.925).abs() <= 1e-3
        && (alpha.re - exact_re).abs() <= 1e-9
        && alpha.im == std::f64::consts::PI;

    let system = repro::complex_spectrum_system();
    let split = split_of(&system);
    let spectrum = eigen::eigenpairs(split.iter_matrix()).unwrap();
    let mu = analysis::mu_max_generalized(&spectrum, -0.5).unwrap();
    let mu_ok = (0.144..=0.150).contains(&mu);

    let coeffs = analysis::abc_coefficients(alpha);
    let m_tilde = gencheb::conjugate_companion(&spectrum).unwrap();
    let block = analysis::companion_generalized(split.iter_matrix(), &m_tilde, &coeffs).unwrap();
    let radius = analysis::clustered_max_modulus(&eigen::eigenvalues(&block).unwrap());
    let radius_ok = (radius - mu).abs() <= 1e-6;
    verdict(
        "7",
        alpha_ok && mu_ok && radius_ok,
        &format!(
            "Re(alpha) = {} (1.925 to 1e-3, ln(3.5+sqrt 11.25) to 1e-9), mu_max = {mu} in \
             [0.144, 0.150], companion radius {radius} within 1e-6",
            alpha.re
        ),
    );
}

// KNOWN FAILURE, asserted anyway to document the gap. Both windowed
// geometric means below are forced by the accelerators' definitions (the
// traces reproduce the bundled tables entry for entry, and the norms
// match an independent eigen-decomposition oracle to 6+ digits):
//
// * generalized, window m = 3..12: the simple seed y(2) = M^2 x(0) differs
//   from the degree-2 weight polynomial (3z^2 - 2 conj z is not z^2), which
//   mixes the defective-triple Jordan transient into the error; the window
//   mean is (|eta13|/|eta3|)^(1/10) = 0.1929, while mu_max = 0.1459 and the
//   tolerance is 0.03. Seeding from the weight polynomial itself would give
//   0.148, but criterion 4's table pins the simple seeds.
// * classical, window m = 4..20: the single-step ratios oscillate between
//   0.06 and 1.9 on this non-normal system, and the window opens exactly on
//   the m = 4 dip (0.0999 against trend ~0.18, visible in the stored table
//   as 0.099 followed by 0.158); the mean is (|eta21|/|eta4|)^(1/17) =
//   0.3250 against 2-sqrt(3) = 0.2679 with tolerance 0.05. Opening at m = 5
//   would give 0.294.
#[test]
fn criterion_08_windowed_empirical_rates() {
    let system2 = repro::complex_spectrum_system();
    let split2 = split_of(&system2);
    let spectrum = eigen::eigenpairs(split2.iter_matrix()).unwrap();
    let mu = analysis::mu_max_generalized(&spectrum, -0.5).unwrap();
    let op = GenChebOperator::from_split(split2).unwrap();
    let gen_trace =
        gencheb::accelerate(&op, &DenseVector::zeros(4), 14, Some(&system2.x_exact)).unwrap();
    let gen_rate = analysis::empirical_rate(&gen_trace, 3, 12).unwrap();
    let gen_ok = (gen_rate - mu).abs() <= 0.03;

    let system1 = repro::real_spectrum_system();
    let split1 = split_of(&system1);
    let cheb_trace = chebyshev::accelerate(
        &split1,
        0.5,
        &DenseVector::zeros(4),
        24,
        Some(&system1.x_exact),
    )
    .unwrap();
    let cheb_rate = analysis::empirical_rate(&cheb_trace, 4, 20).unwrap();
    let cheb_ok = (cheb_rate - (2.0 - 3.0_f64.sqrt())).abs() <= 0.05;

    verdict(
        "8",
        gen_ok && cheb_ok,
        &format!(
            "generalized window 3..12 rate {gen_rate:.4} vs mu_max {mu:.4} (tol 0.03, ok={gen_ok}); \
             classical window 4..20 rate {cheb_rate:.4} vs 0.2679 (tol 0.05, ok={cheb_ok})"
        ),
    );
}

#[test]
fn criterion_09a_functional_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let m = rng.gen_range(0..=10);
        let t1 = rng.gen_range(-1.0..1.0);
        let t2 = rng.gen_range(-1.0..1.0);
        worst = worst.max(gencheb::functional_identity_error(m, t1, t2));
    }
    verdict(
        "9a",
        worst <= 1e-9,
        &format!("functional identity over 100 random arguments, worst {worst:.2e} <= 1e-9"),
    );
}

#[test]
fn criterion_09b_deltoid_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut sampled = 0;
    let mut ok = true;
    while sampled < 1000 {
        let z = scalar(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
        if !gencheb::deltoid_contains(z, 0.0) {
            continue;
        }
        sampled += 1;
        for m in 1..=6 {
            ok &= gencheb::deltoid_contains(gencheb::evaluate(m, z), 1e-9);
        }
    }
    verdict(
        "9b",
        ok,
        "deltoid invariance over 1000 sampled interior points, degrees 1..=6, tol 1e-9",
    );
}

#[test]
fn criterion_09c_coefficient_sums() {
    let mut worst = 0.0_f64;
    for c in chebyshev::coefficient_schedule(50, real(2.0)).unwrap() {
        worst = worst.max(((c.c1 + c.c2) - real(1.0)).norm());
    }
    for c in gencheb::coefficient_schedule(50, real(-0.5)).unwrap() {
        worst = worst.max(((c.c1 + c.c2 + c.c3) - real(1.0)).norm());
    }
    verdict(
        "9c",
        worst <= 1e-12,
        &format!("coefficient sums equal 1 for m <= 50 in both accelerators (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_09d_fixed_point_preservation() {
    let system1 = repro::real_spectrum_system();
    let system2 = repro::complex_spectrum_system();
    let split1 = split_of(&system1);
    let split2 = split_of(&system2);
    let exact = ones(4);
    let theta = analysis::theta_from_rho(0.5).unwrap();
    let op = GenChebOperator::from_split(split2.clone()).unwrap();
    let coeffs = analysis::abc_coefficients(analysis::alpha_from_lambda1(-0.5).unwrap());

    let traces = vec![
        jacobi::iterate(&split1, &exact, 10, Some(&exact)).unwrap(),
        chebyshev::accelerate(&split1, 0.5, &exact, 10, Some(&exact)).unwrap(),
        gencheb::accelerate(&op, &exact, 10, Some(&exact)).unwrap(),
        analysis::stationary_classical(&split1, theta, &exact, 10, Some(&exact)).unwrap(),
        analysis::stationary_generalized(&op, &coeffs, &exact, 10, Some(&exact)).unwrap(),
    ];
    let mut worst = 0.0_f64;
    for trace in &traces {
        for e in trace.error_norms().unwrap() {
            worst = worst.max(*e);
        }
    }
    verdict(
        "9d",
        worst <= 1e-10,
        &format!("all five methods hold the exact solution fixed (worst drift {worst:.2e})"),
    );
}

#[test]
fn criterion_09e_matrix_vector_recursion_agreement() {
    let system = repro::complex_spectrum_system();
    let split = split_of(&system);
    let op = GenChebOperator::from_split(split.clone()).unwrap();
    let steps = 30;
    let exact = ones(4);
    let x0 = DenseVector::zeros(4);
    let trace = gencheb::accelerate(&op, &x0, steps, Some(&exact)).unwrap();
    let schedule = gencheb::coefficient_schedule(steps, op.lambda1()).unwrap();
    let m = split.iter_matrix();
    let e0 = exact.sub(&x0);

    let mut worst = 0.0_f64;
    let mut e_threeback = DenseMatrix::identity(4);
    let mut e_twoback = m.clone();
    let mut e_prev = m.mul_mat(m).unwrap();
    for c in &schedule {
        let e_next = m
            .mul_mat(&e_prev)
            .unwrap()
            .scale(c.c1)
            .add(&op.m_tilde().mul_mat(&e_twoback).unwrap().scale(c.c2))
            .unwrap()
            .add(&e_threeback.scale(c.c3))
            .unwrap();
        let eta = exact.sub(trace.iterate(c.m));
        let gap = eta.sub(&e_next.mul_vec(&e0).unwrap()).norm2();
        worst = worst.max(gap / e0.norm2());
        e_threeback = e_twoback;
        e_twoback = e_prev;
        e_prev = e_next;
    }
    verdict(
        "9e",
        worst <= 1e-10,
        &format!("matrix and vector recursions agree for m <= 30 (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_09f_companion_operator_quality() {
    let system = repro::complex_spectrum_system();
    let split = split_of(&system);
    let m = split.iter_matrix();
    let spectrum = eigen::eigenpairs(m).unwrap();
    let m_tilde = gencheb::conjugate_companion(&spectrum).unwrap();

    let real_ok = m_tilde.is_real();

    let mut em = eigen::eigenvalues(m).unwrap();
    let mut et = eigen::eigenvalues(&m_tilde).unwrap();
    let key = |z: &Scalar| (z.re, z.im);
    em.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    et.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    let spectrum_dev = em
        .iter()
        .zip(&et)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);

    let fnorm = m.frobenius_norm();
    let mut residual = 0.0_f64;
    for j in 0..spectrum.order() {
        let v = spectrum.eigenvector(j).conj();
        let r = m_tilde
            .mul_vec(&v)
            .unwrap()
            .sub(&v.scale(spectrum.eigenvalues()[j]))
            .norm2();
        residual = residual.max(r);
    }
    verdict(
        "9f",
        real_ok && spectrum_dev <= 1e-8 && residual <= 1e-7 * fnorm.max(1.0),
        &format!(
            "companion operator real (exactly), spectrum preserved to {spectrum_dev:.2e}, \
             conjugated-eigenvector residual {residual:.2e}"
        ),
    );
}

#[test]
fn criterion_10_negative_controls() {
    // A spectrum containing -lambda1 is inadmissible.
    let mirrored =
        DenseMatrix::from_real_rows(&[&[0.5, 0.0, 0.0], &[0.0, -0.5, 0.0], &[0.0, 0.0, 0.1]])
            .unwrap();
    let spectrum = eigen::eigenpairs(&mirrored).unwrap();
    let lambda1 = eigen::dominant_eigenvalue(&spectrum).unwrap();
    let (admissible, offenders) = gencheb::spectrum_admissible(&spectrum, lambda1, 1e-9);
    let mirror_rejected = !admissible && offenders.len() == 1;

    // rho >= 1 is rejected.
    let divergent_a = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
    let divergent_b = DenseVector::from_real(&[3.0, 3.0]).unwrap();
    let split = JacobiSplit::new(divergent_a, divergent_b).unwrap();
    let rho_rejected = matches!(
        analysis::convergence_report(&split, None),
        Err(Error::DivergentSpectrum { .. })
    ) && matches!(
        chebyshev::accelerate(&split, 2.0, &DenseVector::zeros(2), 5, None),
        Err(Error::DivergentSpectrum { .. })
    );

    // Zero diagonal is rejected with the offending row index.
    let hollow = DenseMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 0.0]]).unwrap();
    let zero_diag = matches!(
        JacobiSplit::new(hollow, DenseVector::from_real(&[1.0, 1.0]).unwrap()),
        Err(Error::ZeroDiagonal { row: 1 })
    );

    verdict(
        "10",
        mirror_rejected && rho_rejected && zero_diag,
        &format!(
            "mirrored-eigenvalue spectrum rejected ({mirror_rejected}), divergent radius \
             rejected ({rho_rejected}), zero diagonal rejected with row index ({zero_diag})"
        ),
    );
}

#[test]
fn criterion_11_repro_subcommand() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_deltoid"))
        .arg("repro")
        .output()
        .expect("repro subcommand runs");
    let elapsed = start.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let passes = stdout.matches("PASS").count();
    verdict(
        "11",
        output.status.success() && passes == 4 && elapsed < 1.0,
        &format!(
            "repro exit {:?}, {passes}/4 tables PASS, runtime {elapsed:.3}s < 1s",
            output.status.code()
        ),
    );
}
