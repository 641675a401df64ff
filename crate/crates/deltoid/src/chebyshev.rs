//! Classical Chebyshev semi-iterative acceleration.
//!
//! For a splitting with real spectrum and spectral radius `rho < 1`, the
//! accelerated iterate is a two-history recurrence
//!
//! ```text
//! y(m) = c1(m) (M y(m-1) + g) + c2(m) y(m-2)
//! ```
//!
//! whose coefficients are ratios of Chebyshev polynomial values at `1/rho`.
//! Those values grow like `e^(m theta)`, so the schedule is produced from a
//! running triple that is rescaled whenever it grows large; the ratios are
//! scale-invariant. Direct evaluation exists for tests and small `m` only.

use crate::error::{Error, Result};
use crate::jacobi::{IterationTrace, JacobiSplit, Method};
use crate::linalg::{real, DenseVector, Scalar};

/// Coefficient pair for one accelerated step.
///
/// `c1` multiplies `M y(m-1) + g`, `c2` multiplies `y(m-2)`; the pair always
/// sums to 1, which is what keeps the exact solution a fixed point.
#[derive(Debug, Clone, Copy)]
pub struct ChebCoefficients {
    pub m: usize,
    pub c1: Scalar,
    pub c2: Scalar,
}

/// Chebyshev polynomial value by the three-term recurrence
/// `C_m = 2 t C_(m-1) - C_(m-2)`, `C_0 = 1`, `C_1 = t`.
///
/// Values grow unboundedly for `|t| > 1`; use [`coefficient_schedule`] for
/// large `m`.
pub fn evaluate(m: usize, t: Scalar) -> Scalar {
    match m {
        0 => real(1.0),
        1 => t,
        _ => {
            let mut prev = real(1.0);
            let mut cur = t;
            for _ in 2..=m {
                let next = real(2.0) * t * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Deviation `|C_m(cos theta) - cos(m theta)|` from the defining identity.
pub fn functional_identity_error(m: usize, theta: f64) -> f64 {
    let lhs = evaluate(m, real(theta.cos()));
    let rhs = (m as f64 * theta).cos();
    (lhs - real(rhs)).norm()
}

const RESCALE_LIMIT: f64 = 1e100;

/// Coefficient pairs for `m = 2..=m_max` at `t = 1/rho`.
///
/// The running `(C_(m-2), C_(m-1), C_m)` triple is rescaled whenever it
/// grows past a representability limit, so the schedule stays finite for
/// arbitrarily large `m_max`.
pub fn coefficient_schedule(m_max: usize, t: Scalar) -> Result<Vec<ChebCoefficients>> {
    if t.norm() <= 1.0 {
        return Err(Error::DivergentSpectrum {
            radius: 1.0 / t.norm().max(f64::MIN_POSITIVE),
        });
    }
    if m_max < 2 {
        return Err(Error::InvalidConfig(
            "coefficient schedule needs m_max >= 2".into(),
        ));
    }
    let mut out = Vec::with_capacity(m_max - 1);
    let mut prev = real(1.0); // C_(m-2)
    let mut cur = t; // C_(m-1)
    for m in 2..=m_max {
        let next = real(2.0) * t * cur - prev;
        // c1 = 2 C_(m-1)(t) / (rho C_m(t)) with rho = 1/t.
        let c1 = real(2.0) * t * cur / next;
        let c2 = -prev / next;
        out.push(ChebCoefficients { m, c1, c2 });
        prev = cur;
        cur = next;
        let scale = prev.norm().max(cur.norm());
        if scale > RESCALE_LIMIT {
            prev /= real(scale);
            cur /= real(scale);
        }
    }
    Ok(out)
}

/// Runs the Chebyshev-accelerated iteration.
///
/// Seeds are `y(0) = x0` and `y(1) = M x0 + g` (one plain Jacobi step); the
/// three-term recurrence starts at `m = 2`.
pub fn accelerate(
    split: &JacobiSplit,
    rho: f64,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    if !(0.0..1.0).contains(&rho) || rho == 0.0 {
        return Err(Error::DivergentSpectrum { radius: rho });
    }
    if steps < 2 {
        return Err(Error::InvalidConfig(
            "chebyshev acceleration needs steps >= 2".into(),
        ));
    }
    if x0.len() != split.dimension() {
        return Err(Error::DimensionMismatch {
            expected: format!("starting guess of length {}", split.dimension()),
            found: format!("length {}", x0.len()),
        });
    }
    let schedule = coefficient_schedule(steps, real(1.0 / rho))?;
    let mut trace = IterationTrace::new(Method::Chebyshev);
    let mut two_back = x0.clone();
    trace.push(split, two_back.clone(), x_exact, None)?;
    let mut prev = split.step(&two_back)?;
    trace.push(split, prev.clone(), x_exact, None)?;
    for c in &schedule {
        let jacobi_step = split.step(&prev)?;
        let y = jacobi_step.scale(c.c1).add(&two_back.scale(c.c2));
        trace.push(split, y.clone(), x_exact, Some([c.c1, c.c2, real(0.0)]))?;
        two_back = prev;
        prev = y;
    }
    Ok(trace)
}
