//! Deltoid-region Chebyshev acceleration for complex spectra.
//!
//! The classical accelerator rests on the interval `[-1, 1]` staying
//! invariant under Chebyshev polynomials. The bivariate analogue used here
//! rests on the deltoid region (the Steiner hypocycloid with corners at the
//! third roots of unity) staying invariant under the polynomial family
//!
//! ```text
//! F_0 = 1,  F_1 = z,  F_2 = 3z^2 - 2 conj(z),
//! F_m = 3z F_(m-1) - 3 conj(z) F_(m-2) + F_(m-3)
//! ```
//!
//! evaluated on the diagonal slice `(z, conj z)`. Because the recurrence
//! conjugates its argument, running it on the iteration matrix needs a
//! companion operator `M~` carrying the same eigenvalues as `M` on the
//! conjugated eigenvectors, together with an offset `g~` fixing the exact
//! solution. The resulting accelerator is a three-history recurrence
//!
//! ```text
//! y(m) = c1(m) (M y(m-1) + g) + c2(m) (M~ y(m-2) + g~) + c3(m) y(m-3)
//! ```
//!
//! and applies whenever every eigenvalue ratio `lambda / lambda1` lies in
//! the deltoid.
//!
//! Note on `g~`: it is constructed from the exact solution, obtained by one
//! direct solve of `(I - M) x = g` when not supplied. That makes the method
//! a study/demonstration tool rather than a practical solver; see
//! [`companion_offset`].

use crate::eigen::{self, Spectrum};
use crate::error::{Error, Result};
use crate::jacobi::{IterationTrace, JacobiSplit, Method};
use crate::linalg::{real, scalar, DenseMatrix, DenseVector, Scalar};

/// Default slack on the deltoid inequality; `lambda1 / lambda1 = 1` always
/// sits exactly on a corner, so the test needs room for roundoff.
pub const ADMISSIBILITY_TOL: f64 = 1e-9;

// ── Deltoid geometry ────────────────────────────────────────────────

/// Generalized cosine: `(1/3)(e^(2 pi i t1) + e^(-2 pi i t2) + e^(2 pi i (t2 - t1)))`.
///
/// Its image over real arguments is exactly the deltoid region.
pub fn generalized_cosine(t1: f64, t2: f64) -> Scalar {
    let tau = 2.0 * std::f64::consts::PI;
    let e = |arg: f64| scalar(arg.cos(), arg.sin());
    (e(tau * t1) + e(-tau * t2) + e(tau * (t2 - t1))) * real(1.0 / 3.0)
}

/// Left-hand side of the deltoid membership inequality
/// `3 (x^2 + y^2 + 1)^2 + 8 (-x^3 + 3 x y^2) <= 4`.
pub fn deltoid_expression(z: Scalar) -> f64 {
    let (x, y) = (z.re, z.im);
    let r2 = x * x + y * y;
    3.0 * (r2 + 1.0) * (r2 + 1.0) + 8.0 * (-x * x * x + 3.0 * x * y * y)
}

/// Deltoid membership with slack `tol` on the defining inequality.
pub fn deltoid_contains(z: Scalar, tol: f64) -> bool {
    deltoid_expression(z) <= 4.0 + tol
}

// ── Polynomial evaluation ───────────────────────────────────────────

/// Value of the m-th deltoid polynomial on the diagonal slice `(z, conj z)`.
///
/// Grows unboundedly outside the deltoid; use [`coefficient_schedule`] for
/// ratio sequences at large `m`.
pub fn evaluate(m: usize, z: Scalar) -> Scalar {
    let zbar = z.conj();
    match m {
        0 => real(1.0),
        1 => z,
        2 => real(3.0) * z * z - real(2.0) * zbar,
        _ => {
            let mut f0 = real(1.0);
            let mut f1 = z;
            let mut f2 = real(3.0) * z * z - real(2.0) * zbar;
            for _ in 3..=m {
                let f3 = real(3.0) * z * f2 - real(3.0) * zbar * f1 + f0;
                f0 = f1;
                f1 = f2;
                f2 = f3;
            }
            f2
        }
    }
}

/// Deviation from the defining identity: the m-th polynomial applied to the
/// generalized cosine must reproduce the cosine of the scaled argument.
pub fn functional_identity_error(m: usize, t1: f64, t2: f64) -> f64 {
    let lhs = evaluate(m, generalized_cosine(t1, t2));
    let rhs = generalized_cosine(m as f64 * t1, m as f64 * t2);
    (lhs - rhs).norm()
}

// ── Admissibility ───────────────────────────────────────────────────

/// Checks that every ratio `lambda / lambda1` lies in the deltoid.
///
/// Returns the verdict together with the offending eigenvalues.
pub fn spectrum_admissible(spectrum: &Spectrum, lambda1: Scalar, tol: f64) -> (bool, Vec<Scalar>) {
    let offenders: Vec<Scalar> = spectrum
        .eigenvalues()
        .iter()
        .copied()
        .filter(|&lam| !deltoid_contains(lam / lambda1, tol))
        .collect();
    (offenders.is_empty(), offenders)
}

// ── Companion operator ──────────────────────────────────────────────

/// Builds the operator with `M`'s eigenvalues on the conjugated
/// eigenvectors: `M~ = P conj(D0) P^(-1)` for `D0 = P^(-1) M P`.
///
/// Conjugate-consistent pairing in the spectrum makes the product real up
/// to roundoff; the imaginary part is checked against
/// `1e-9 * ||M~||_F` and then truncated to exactly zero.
pub fn conjugate_companion(spectrum: &Spectrum) -> Result<DenseMatrix> {
    let n = spectrum.order();
    let p = spectrum.eigenvectors();
    // W = P * conj(D0): scale column j by conj(lambda_j).
    let mut w = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let lam = spectrum.eigenvalues()[j].conj();
        for i in 0..n {
            w.set(i, j, p.get(i, j) * lam);
        }
    }
    // Solve M~ P = W by factoring P^T and solving for M~^T.
    let factors = p.transpose().lu()?;
    let m_tilde_t = factors.solve_matrix(&w.transpose())?;
    let m_tilde = m_tilde_t.transpose();
    let imag_norm = m_tilde.imag_frobenius_norm();
    if imag_norm > 1e-9 * m_tilde.frobenius_norm() {
        return Err(Error::NonRealResult { imag_norm });
    }
    Ok(m_tilde.real_part())
}

/// Offset `g~` with `M~ x + g~ = x` at the exact solution `x`.
///
/// When `x_exact` is not supplied, `x` comes from one direct LU solve of
/// `(I - M) x = g`, which exists because the spectral radius is below one.
pub fn companion_offset(
    m_tilde: &DenseMatrix,
    split: &JacobiSplit,
    x_exact: Option<&DenseVector>,
) -> Result<DenseVector> {
    let x = match x_exact {
        Some(x) => x.clone(),
        None => {
            let n = split.dimension();
            let i_minus_m = DenseMatrix::identity(n).sub(split.iter_matrix())?;
            i_minus_m.lu()?.solve(split.offset())?
        }
    };
    Ok(x.sub(&m_tilde.mul_vec(&x)?))
}

// ── Coefficient schedule ────────────────────────────────────────────

/// Coefficient triple for one accelerated step; always sums to 1.
#[derive(Debug, Clone, Copy)]
pub struct GenCoefficients {
    pub m: usize,
    /// Multiplies `M y(m-1) + g`.
    pub c1: Scalar,
    /// Multiplies `M~ y(m-2) + g~`.
    pub c2: Scalar,
    /// Multiplies `y(m-3)`.
    pub c3: Scalar,
}

/// Coefficient triples for `m = 3..=m_max` at `t = 1/lambda1`.
///
/// The running four-value window is rescaled by its largest modulus each
/// step (the ratios are scale-invariant), so schedules up to `m_max = 1e4`
/// and beyond stay finite.
pub fn coefficient_schedule(m_max: usize, lambda1: Scalar) -> Result<Vec<GenCoefficients>> {
    let radius = lambda1.norm();
    if radius >= 1.0 {
        return Err(Error::DivergentSpectrum { radius });
    }
    if radius < 1e-14 {
        return Err(Error::ZeroSpectrum);
    }
    if m_max < 3 {
        return Err(Error::InvalidConfig(
            "coefficient schedule needs m_max >= 3".into(),
        ));
    }
    let t = real(1.0) / lambda1;
    let tbar = t.conj();
    let mut f = [
        real(1.0),                            // F_(m-3)
        t,                                    // F_(m-2)
        real(3.0) * t * t - real(2.0) * tbar, // F_(m-1)
    ];
    let mut out = Vec::with_capacity(m_max - 2);
    for m in 3..=m_max {
        let fm = real(3.0) * t * f[2] - real(3.0) * tbar * f[1] + f[0];
        let c1 = real(3.0) * f[2] / (lambda1 * fm);
        let c2 = -real(3.0) * f[1] / (lambda1.conj() * fm);
        let c3 = f[0] / fm;
        out.push(GenCoefficients { m, c1, c2, c3 });
        f = [f[1], f[2], fm];
        let scale = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale > 1e80 {
            for v in f.iter_mut() {
                *v /= real(scale);
            }
        }
    }
    Ok(out)
}

// ── Operator and acceleration ───────────────────────────────────────

/// How to treat eigenvalue ratios that fall outside the deltoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Admissibility {
    /// Refuse to run (the default).
    #[default]
    Strict,
    /// Proceed anyway; callers surface the offenders as a warning.
    Warn,
}

/// Optional overrides for [`GenChebOperator::with_config`].
#[derive(Debug, Clone, Default)]
pub struct OperatorConfig {
    /// Dominant eigenvalue to use instead of the computed one.
    pub lambda1: Option<Scalar>,
    /// Companion offset to use instead of the LU-solve construction.
    pub g_tilde: Option<DenseVector>,
    /// Exact solution, when known, for the offset construction.
    pub x_exact: Option<DenseVector>,
    pub admissibility: Admissibility,
    /// Slack on the deltoid inequality; defaults to [`ADMISSIBILITY_TOL`].
    pub admissibility_tol: Option<f64>,
}

/// Everything the deltoid accelerator needs: the splitting, the companion
/// pair `(M~, g~)`, the dominant eigenvalue and the spectrum behind it.
#[derive(Debug, Clone)]
pub struct GenChebOperator {
    split: JacobiSplit,
    m_tilde: DenseMatrix,
    g_tilde: DenseVector,
    lambda1: Scalar,
    spectrum: Spectrum,
    admissibility: Admissibility,
    admissibility_tol: f64,
}

impl GenChebOperator {
    /// Builds the operator with defaults: computed spectrum, computed
    /// dominant eigenvalue, strict admissibility, LU-solve offset.
    pub fn from_split(split: JacobiSplit) -> Result<Self> {
        Self::with_config(split, OperatorConfig::default())
    }

    pub fn with_config(split: JacobiSplit, config: OperatorConfig) -> Result<Self> {
        let spectrum = eigen::eigenpairs(split.iter_matrix())?;
        let lambda1 = match config.lambda1 {
            Some(lam) => lam,
            None => eigen::dominant_eigenvalue(&spectrum)?,
        };
        let radius = lambda1.norm();
        if radius >= 1.0 {
            return Err(Error::DivergentSpectrum { radius });
        }
        if radius < 1e-14 {
            return Err(Error::ZeroSpectrum);
        }
        let tol = config.admissibility_tol.unwrap_or(ADMISSIBILITY_TOL);
        let (ok, offenders) = spectrum_admissible(&spectrum, lambda1, tol);
        if !ok && config.admissibility == Admissibility::Strict {
            return Err(Error::InadmissibleSpectrum { offenders });
        }
        let m_tilde = conjugate_companion(&spectrum)?;
        let g_tilde = match config.g_tilde {
            Some(g) => {
                if g.len() != split.dimension() {
                    return Err(Error::DimensionMismatch {
                        expected: format!("offset of length {}", split.dimension()),
                        found: format!("length {}", g.len()),
                    });
                }
                g
            }
            None => companion_offset(&m_tilde, &split, config.x_exact.as_ref())?,
        };
        Ok(Self {
            split,
            m_tilde,
            g_tilde,
            lambda1,
            spectrum,
            admissibility: config.admissibility,
            admissibility_tol: tol,
        })
    }

    pub fn split(&self) -> &JacobiSplit {
        &self.split
    }

    pub fn m_tilde(&self) -> &DenseMatrix {
        &self.m_tilde
    }

    pub fn g_tilde(&self) -> &DenseVector {
        &self.g_tilde
    }

    pub fn lambda1(&self) -> Scalar {
        self.lambda1
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Ratios outside the deltoid at this operator's tolerance.
    pub fn offenders(&self) -> Vec<Scalar> {
        spectrum_admissible(&self.spectrum, self.lambda1, self.admissibility_tol).1
    }

    /// One companion step `M~ y + g~`.
    fn companion_step(&self, y: &DenseVector) -> Result<DenseVector> {
        Ok(self.m_tilde.mul_vec(y)?.add(&self.g_tilde))
    }
}

/// Runs the deltoid-accelerated iteration, refusing inadmissible spectra.
///
/// Seeds are `y(0) = x0` plus two plain Jacobi steps; the three-term
/// recurrence starts at `m = 3`.
pub fn accelerate(
    op: &GenChebOperator,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    let (ok, offenders) = spectrum_admissible(&op.spectrum, op.lambda1, op.admissibility_tol);
    if !ok && op.admissibility == Admissibility::Strict {
        return Err(Error::InadmissibleSpectrum { offenders });
    }
    accelerate_unchecked(op, x0, steps, x_exact)
}

/// Runs the iteration without the admissibility gate. Behaviour outside the
/// deltoid is the caller's responsibility.
pub fn accelerate_unchecked(
    op: &GenChebOperator,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    if steps < 3 {
        return Err(Error::InvalidConfig(
            "deltoid acceleration needs steps >= 3".into(),
        ));
    }
    let split = &op.split;
    if x0.len() != split.dimension() {
        return Err(Error::DimensionMismatch {
            expected: format!("starting guess of length {}", split.dimension()),
            found: format!("length {}", x0.len()),
        });
    }
    let schedule = coefficient_schedule(steps, op.lambda1)?;
    let mut trace = IterationTrace::new(Method::GenCheby);
    let mut three_back = x0.clone();
    trace.push(split, three_back.clone(), x_exact, None)?;
    let mut two_back = split.step(&three_back)?;
    trace.push(split, two_back.clone(), x_exact, None)?;
    let mut prev = split.step(&two_back)?;
    trace.push(split, prev.clone(), x_exact, None)?;
    for c in &schedule {
        let jacobi_part = split.step(&prev)?;
        let companion_part = op.companion_step(&two_back)?;
        let y = jacobi_part
            .scale(c.c1)
            .add(&companion_part.scale(c.c2))
            .add(&three_back.scale(c.c3));
        trace.push(split, y.clone(), x_exact, Some([c.c1, c.c2, c.c3]))?;
        three_back = two_back;
        two_back = prev;
        prev = y;
    }
    Ok(trace)
}
