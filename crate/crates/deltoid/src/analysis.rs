//! Ultimate-behaviour analysis of the accelerated iterations.
//!
//! Far from the start, both accelerators settle into stationary three-/two-
//! term recurrences whose contraction factor is the spectral radius of a
//! block companion matrix. This module computes those limits along two
//! independent routes (per-eigenvalue scalar polynomials and the assembled
//! block companion), runs the limiting stationary iterations themselves,
//! and estimates empirical rates from recorded traces.

use crate::eigen::{self, Spectrum};
use crate::error::{Error, Result};
use crate::gencheb::{self, GenChebOperator};
use crate::jacobi::{IterationTrace, JacobiSplit, Method};
use crate::linalg::{real, scalar, DenseMatrix, DenseVector, Scalar};

// ── Classical limit ─────────────────────────────────────────────────

/// Positive solution of `cosh(theta) = 1/rho` for `0 < rho < 1`.
pub fn theta_from_rho(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::OutOfRange(format!(
            "spectral radius must lie in (0, 1), got {rho}"
        )));
    }
    Ok((1.0 / rho).acosh())
}

/// Asymptotic contraction factor of the classical accelerator,
/// `(1 - sqrt(1 - rho^2)) / rho`, evaluated in the cancellation-free form
/// `rho / (1 + sqrt(1 - rho^2))`. Equals `e^(-theta)`.
pub fn mu_max_classical(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::OutOfRange(format!(
            "spectral radius must lie in (0, 1), got {rho}"
        )));
    }
    Ok(rho / (1.0 + (1.0 - rho * rho).sqrt()))
}

/// Both roots of `mu^2 - mu (1 + e^(-2 theta)) lambda + e^(-2 theta) = 0`,
/// the per-eigenvalue characteristic of the classical stationary limit.
pub fn mu_quadratic(lambda: Scalar, theta: f64) -> [Scalar; 2] {
    let c = real(1.0 + (-2.0 * theta).exp());
    let d = real((-2.0 * theta).exp());
    let half_b = c * lambda * real(0.5);
    let mut s = (half_b * half_b - d).sqrt();
    // Pick the sign that avoids cancellation in the larger root.
    if (half_b.conj() * s).re < 0.0 {
        s = -s;
    }
    let mu1 = half_b + s;
    let mu2 = if mu1.norm() > 0.0 {
        d / mu1
    } else {
        half_b - s
    };
    [mu1, mu2]
}

// ── Generalized limit ───────────────────────────────────────────────

/// Asymptotic coefficient set `(alpha, a, b, c)` of the deltoid
/// accelerator's stationary limit, with `a + b + c = 1` by telescoping.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticCoefficients {
    pub alpha: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

/// Solves `(1/3)(2 cosh(alpha) + 1) = 1/lambda1` for real `lambda1`,
/// returning the solution with positive real part. The imaginary part is 0
/// when `cosh(alpha) >= 1` and exactly pi when `cosh(alpha) <= -1`.
pub fn alpha_from_lambda1(lambda1: f64) -> Result<Scalar> {
    if !(lambda1.abs() > 0.0 && lambda1.abs() < 1.0) {
        return Err(Error::OutOfRange(format!(
            "dominant eigenvalue must satisfy 0 < |lambda1| < 1, got {lambda1}"
        )));
    }
    let cosh_alpha = (3.0 / lambda1 - 1.0) / 2.0;
    if cosh_alpha.abs() < 1.0 {
        // Unreachable for 0 < |lambda1| < 1; guarded anyway.
        return Err(Error::OutOfRange(format!(
            "no real-axis parametrization: cosh(alpha) = {cosh_alpha}"
        )));
    }
    if cosh_alpha >= 1.0 {
        Ok(real(cosh_alpha.acosh()))
    } else {
        Ok(scalar((-cosh_alpha).acosh(), std::f64::consts::PI))
    }
}

/// `e^(-alpha)`, kept exactly real on the two branches produced by
/// [`alpha_from_lambda1`].
fn exp_neg(alpha: Scalar) -> Scalar {
    if alpha.im == 0.0 {
        real((-alpha.re).exp())
    } else if alpha.im == std::f64::consts::PI {
        real(-(-alpha.re).exp())
    } else {
        (-alpha).exp()
    }
}

/// Coefficients `a = 1 + s + s^2`, `b = -(s + s^2 + s^3)`, `c = s^3` for
/// `s = e^(-alpha)`.
pub fn abc_coefficients(alpha: Scalar) -> AsymptoticCoefficients {
    let s = exp_neg(alpha);
    let s2 = s * s;
    let s3 = s2 * s;
    AsymptoticCoefficients {
        alpha,
        a: real(1.0) + s + s2,
        b: -(s + s2 + s3),
        c: s3,
    }
}

/// All three roots of `mu^3 - a lambda mu^2 - b conj(lambda) mu - c = 0`,
/// the per-eigenvalue characteristic of the generalized stationary limit,
/// computed as companion-matrix eigenvalues.
///
/// At `lambda = lambda1` the cubic has a defective triple root; rounding
/// splits it by a few 1e-6 (the `eps^(1/3)` law). [`cluster_means`] recovers
/// the underlying value when needed.
pub fn mu_cubic(lambda: Scalar, coeffs: &AsymptoticCoefficients) -> Result<[Scalar; 3]> {
    let c2 = -(coeffs.a * lambda);
    let c1 = -(coeffs.b * lambda.conj());
    let c0 = -coeffs.c;
    let roots = eigen::polynomial_roots(&[c0, c1, c2])?;
    Ok([roots[0], roots[1], roots[2]])
}

/// Relative cluster diameter used by [`cluster_means`]: comfortably above
/// the eps^(1/3) splitting of a defective triple eigenvalue, comfortably
/// below genuine eigenvalue gaps.
const CLUSTER_REL_TOL: f64 = 1.2e-4; // 32 * eps^(1/3)

/// Collapses tight clusters of computed eigenvalues onto their means.
///
/// A defective eigenvalue of multiplicity k splits under rounding into a
/// near-symmetric star of k values whose first-order perturbations sum to
/// zero, so the cluster mean estimates the true eigenvalue to second order
/// (~1e-10 instead of ~1e-5). Values further apart than `CLUSTER_REL_TOL`
/// relative to the largest modulus are left untouched.
pub fn cluster_means(values: &[Scalar]) -> Vec<Scalar> {
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return values.to_vec();
    }
    let tol = CLUSTER_REL_TOL * scale;
    let n = values.len();
    // Union-find over pairwise-close values.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut sums = vec![Scalar::new(0.0, 0.0); n];
    let mut counts = vec![0usize; n];
    for (i, v) in values.iter().enumerate() {
        let r = find(&mut parent, i);
        sums[r] += v;
        counts[r] += 1;
    }
    // Path compression above left every entry pointing at its root.
    (0..n)
        .map(|i| sums[parent[i]] / real(counts[parent[i]] as f64))
        .collect()
}

/// Maximum modulus over a computed eigenvalue list, measured on cluster
/// means so defective-eigenvalue splitting does not inflate the result.
pub fn clustered_max_modulus(values: &[Scalar]) -> f64 {
    cluster_means(values)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Largest `|mu|` over the whole spectrum for the generalized limit at a
/// real dominant eigenvalue, measured on defect-cluster means.
pub fn mu_max_generalized(spectrum: &Spectrum, lambda1: f64) -> Result<f64> {
    let coeffs = abc_coefficients(alpha_from_lambda1(lambda1)?);
    let mut all_roots = Vec::with_capacity(3 * spectrum.order());
    for &lam in spectrum.eigenvalues() {
        all_roots.extend(mu_cubic(lam, &coeffs)?);
    }
    Ok(clustered_max_modulus(&all_roots))
}

// ── Block companion matrices ────────────────────────────────────────

/// `2n x 2n` companion of the classical stationary recurrence
/// `eta(m) = (1 + e^(-2 theta)) M eta(m-1) - e^(-2 theta) eta(m-2)`.
///
/// Block form `[[ (1+e^(-2 theta)) M, -e^(-2 theta) I ], [ I, 0 ]]`; the
/// sign on the top-right block follows the recurrence, so the eigenvalues
/// satisfy exactly the [`mu_quadratic`] polynomial.
pub fn companion_classical(m: &DenseMatrix, theta: f64) -> DenseMatrix {
    let n = m.rows();
    let d = (-2.0 * theta).exp();
    let mut out = DenseMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, m.get(i, j) * real(1.0 + d));
        }
        out.set(i, n + i, real(-d));
        out.set(n + i, i, real(1.0));
    }
    out
}

/// `3n x 3n` companion of the generalized stationary recurrence
/// `eta(m) = a M eta(m-1) + b M~ eta(m-2) + c eta(m-3)`:
/// `[[aM, bM~, cI], [I, 0, 0], [0, I, 0]]`.
pub fn companion_generalized(
    m: &DenseMatrix,
    m_tilde: &DenseMatrix,
    coeffs: &AsymptoticCoefficients,
) -> Result<DenseMatrix> {
    if m.rows() != m_tilde.rows() || m.cols() != m_tilde.cols() || !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: format!("square companion pair of size {}", m.rows()),
            found: format!("{}x{}", m_tilde.rows(), m_tilde.cols()),
        });
    }
    let n = m.rows();
    let mut out = DenseMatrix::zeros(3 * n, 3 * n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, m.get(i, j) * coeffs.a);
            out.set(i, n + j, m_tilde.get(i, j) * coeffs.b);
        }
        out.set(i, 2 * n + i, coeffs.c);
        out.set(n + i, i, real(1.0));
        out.set(2 * n + i, n + i, real(1.0));
    }
    Ok(out)
}

// ── Stationary limit iterations ─────────────────────────────────────

/// Runs the classical stationary limit recurrence itself.
pub fn stationary_classical(
    split: &JacobiSplit,
    theta: f64,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    if theta <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "theta must be positive, got {theta}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidConfig(
            "stationary iteration needs steps >= 2".into(),
        ));
    }
    if x0.len() != split.dimension() {
        return Err(Error::DimensionMismatch {
            expected: format!("starting guess of length {}", split.dimension()),
            found: format!("length {}", x0.len()),
        });
    }
    let d = (-2.0 * theta).exp();
    let (c1, c2) = (real(1.0 + d), real(-d));
    let mut trace = IterationTrace::new(Method::StationaryClassical);
    let mut two_back = x0.clone();
    trace.push(split, two_back.clone(), x_exact, None)?;
    let mut prev = split.step(&two_back)?;
    trace.push(split, prev.clone(), x_exact, None)?;
    for _ in 2..=steps {
        let y = split.step(&prev)?.scale(c1).add(&two_back.scale(c2));
        trace.push(split, y.clone(), x_exact, Some([c1, c2, real(0.0)]))?;
        two_back = prev;
        prev = y;
    }
    Ok(trace)
}

/// Runs the generalized stationary limit recurrence itself.
pub fn stationary_generalized(
    op: &GenChebOperator,
    coeffs: &AsymptoticCoefficients,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    if steps < 3 {
        return Err(Error::InvalidConfig(
            "stationary iteration needs steps >= 3".into(),
        ));
    }
    let split = op.split();
    if x0.len() != split.dimension() {
        return Err(Error::DimensionMismatch {
            expected: format!("starting guess of length {}", split.dimension()),
            found: format!("length {}", x0.len()),
        });
    }
    let mut trace = IterationTrace::new(Method::StationaryGeneralized);
    let mut three_back = x0.clone();
    trace.push(split, three_back.clone(), x_exact, None)?;
    let mut two_back = split.step(&three_back)?;
    trace.push(split, two_back.clone(), x_exact, None)?;
    let mut prev = split.step(&two_back)?;
    trace.push(split, prev.clone(), x_exact, None)?;
    for _ in 3..=steps {
        let companion_part = op.m_tilde().mul_vec(&two_back)?.add(op.g_tilde());
        let y = split
            .step(&prev)?
            .scale(coeffs.a)
            .add(&companion_part.scale(coeffs.b))
            .add(&three_back.scale(coeffs.c));
        trace.push(
            split,
            y.clone(),
            x_exact,
            Some([coeffs.a, coeffs.b, coeffs.c]),
        )?;
        three_back = two_back;
        two_back = prev;
        prev = y;
    }
    Ok(trace)
}

// ── Empirical rates ─────────────────────────────────────────────────

/// Geometric mean of successive error-norm ratios over `m_start..=m_end`.
///
/// Ratios whose denominator is below 1e-14 are skipped; the mean runs over
/// the survivors.
pub fn empirical_rate(trace: &IterationTrace, m_start: usize, m_end: usize) -> Result<f64> {
    let errors = trace.error_norms().ok_or(Error::EmptyWindow)?;
    if m_start > m_end || m_end + 1 >= errors.len() {
        return Err(Error::EmptyWindow);
    }
    let mut log_sum = 0.0;
    let mut count = 0usize;
    for m in m_start..=m_end {
        if errors[m] < 1e-14 {
            continue;
        }
        log_sum += (errors[m + 1] / errors[m]).ln();
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyWindow);
    }
    Ok((log_sum / count as f64).exp())
}

// ── Convergence report ──────────────────────────────────────────────

/// Scalar-limit roots attached to one eigenvalue of `M`.
#[derive(Debug, Clone)]
pub struct EigenvalueRoots {
    pub lambda: Scalar,
    pub quadratic: [Scalar; 2],
    pub cubic: Option<[Scalar; 3]>,
}

/// Everything `analyze` prints: spectrum summary, admissibility, classical
/// and generalized limit factors, and the companion spectral radii.
///
/// Generalized fields are `None` when the dominant eigenvalue is not real
/// (the real-axis parametrization behind `alpha` does not cover that case).
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rho: f64,
    pub lambda1: Scalar,
    pub admissible: bool,
    pub offenders: Vec<Scalar>,
    pub theta: f64,
    pub mu_max_classical: f64,
    pub alpha: Option<Scalar>,
    pub coefficients: Option<AsymptoticCoefficients>,
    pub mu_max_generalized: Option<f64>,
    pub companion_radius_classical: f64,
    pub companion_radius_generalized: Option<f64>,
    pub per_eigenvalue: Vec<EigenvalueRoots>,
}

/// Builds the full report for one splitting.
pub fn convergence_report(
    split: &JacobiSplit,
    lambda1_override: Option<Scalar>,
) -> Result<ConvergenceReport> {
    let spectrum = eigen::eigenpairs(split.iter_matrix())?;
    let lambda1 = match lambda1_override {
        Some(lam) => lam,
        None => eigen::dominant_eigenvalue(&spectrum)?,
    };
    let rho = lambda1.norm();
    if rho >= 1.0 {
        return Err(Error::DivergentSpectrum { radius: rho });
    }
    if rho < 1e-14 {
        return Err(Error::ZeroSpectrum);
    }
    let (admissible, offenders) =
        gencheb::spectrum_admissible(&spectrum, lambda1, gencheb::ADMISSIBILITY_TOL);
    let theta = theta_from_rho(rho)?;
    let mu_classical = mu_max_classical(rho)?;
    let companion_radius_classical = clustered_max_modulus(&eigen::eigenvalues(
        &companion_classical(split.iter_matrix(), theta),
    )?);

    let generalized = if lambda1.im == 0.0 {
        let coeffs = abc_coefficients(alpha_from_lambda1(lambda1.re)?);
        let mu_gen = mu_max_generalized(&spectrum, lambda1.re)?;
        let m_tilde = gencheb::conjugate_companion(&spectrum)?;
        let block = companion_generalized(split.iter_matrix(), &m_tilde, &coeffs)?;
        let radius = clustered_max_modulus(&eigen::eigenvalues(&block)?);
        Some((coeffs, mu_gen, radius))
    } else {
        None
    };

    let mut per_eigenvalue = Vec::new();
    for &lam in spectrum.eigenvalues() {
        let cubic = match &generalized {
            Some((coeffs, _, _)) => Some(mu_cubic(lam, coeffs)?),
            None => None,
        };
        per_eigenvalue.push(EigenvalueRoots {
            lambda: lam,
            quadratic: mu_quadratic(lam, theta),
            cubic,
        });
    }

    Ok(ConvergenceReport {
        rho,
        lambda1,
        admissible,
        offenders,
        theta,
        mu_max_classical: mu_classical,
        alpha: generalized.as_ref().map(|(c, _, _)| c.alpha),
        coefficients: generalized.as_ref().map(|(c, _, _)| *c),
        mu_max_generalized: generalized.as_ref().map(|(_, mu, _)| *mu),
        companion_radius_classical,
        companion_radius_generalized: generalized.as_ref().map(|(_, _, r)| *r),
        per_eigenvalue,
    })
}
