//! Jacobi splitting and the baseline stationary iteration, with tracing.
//!
//! The splitting `A = L + D + U` (strict triangles plus diagonal) yields the
//! iteration matrix `M = -D^{-1}(L + U)` and offset `g = D^{-1} b`; every
//! accelerator in this crate runs on top of this pair. Traces keep the full
//! iterate history so convergence behaviour can be analyzed after the run.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DenseVector, Scalar};

/// Identifies which method produced a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Jacobi,
    Chebyshev,
    GenCheby,
    StationaryClassical,
    StationaryGeneralized,
}

impl Method {
    /// Stable label, also used as the CLI method name.
    pub fn label(&self) -> &'static str {
        match self {
            Method::Jacobi => "jacobi",
            Method::Chebyshev => "chebyshev",
            Method::GenCheby => "gencheby",
            Method::StationaryClassical => "stationary-classical",
            Method::StationaryGeneralized => "stationary-generalized",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

// ── JacobiSplit ─────────────────────────────────────────────────────

/// The pair `(M, g)` for a system `A x = b`, kept together with the system.
#[derive(Debug, Clone)]
pub struct JacobiSplit {
    a: DenseMatrix,
    rhs: DenseVector,
    iter_matrix: DenseMatrix,
    offset: DenseVector,
}

impl JacobiSplit {
    /// Splits `A x = b`; every diagonal entry must clear the relative
    /// threshold `1e-13 * max |A_ij|`.
    pub fn new(a: DenseMatrix, b: DenseVector) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", a.rows(), a.cols()),
            });
        }
        if !a.is_real() {
            return Err(Error::InvalidConfig(
                "Jacobi splitting expects a real matrix".into(),
            ));
        }
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("right-hand side of length {}", a.rows()),
                found: format!("length {}", b.len()),
            });
        }
        let n = a.rows();
        let threshold = 1e-13 * a.max_abs_entry();
        let mut m = DenseMatrix::zeros(n, n);
        let mut g = Vec::with_capacity(n);
        for i in 0..n {
            let d = a.get(i, i);
            if d.norm() < threshold || d.norm() == 0.0 {
                return Err(Error::ZeroDiagonal { row: i });
            }
            for j in 0..n {
                // Skipping zeros keeps them positive zero.
                if i != j && a.get(i, j) != Scalar::new(0.0, 0.0) {
                    m.set(i, j, -a.get(i, j) / d);
                }
            }
            g.push(b[i] / d);
        }
        Ok(Self {
            a,
            rhs: b,
            iter_matrix: m,
            offset: DenseVector::new(g)?,
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &DenseVector {
        &self.rhs
    }

    /// The Jacobi iteration matrix `M = -D^{-1}(L + U)`.
    pub fn iter_matrix(&self) -> &DenseMatrix {
        &self.iter_matrix
    }

    /// The Jacobi offset `g = D^{-1} b`.
    pub fn offset(&self) -> &DenseVector {
        &self.offset
    }

    pub fn dimension(&self) -> usize {
        self.a.rows()
    }

    /// One Jacobi step `M x + g`.
    pub fn step(&self, x: &DenseVector) -> Result<DenseVector> {
        Ok(self.iter_matrix.mul_vec(x)?.add(&self.offset))
    }

    /// Euclidean norm of the residual `b - A x`.
    pub fn residual_norm(&self, x: &DenseVector) -> Result<f64> {
        Ok(self.rhs.sub(&self.a.mul_vec(x)?).norm2())
    }

    /// Relative infinity-norm residual, the default stopping quantity.
    pub fn relative_residual_inf(&self, x: &DenseVector) -> Result<f64> {
        let denom = self.rhs.norm_inf().max(f64::MIN_POSITIVE);
        Ok(self.rhs.sub(&self.a.mul_vec(x)?).norm_inf() / denom)
    }
}

// ── IterationTrace ──────────────────────────────────────────────────

/// Full history of one solver run: iterates, norms, per-step coefficients.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    method: Method,
    iterates: Vec<DenseVector>,
    residual_norms: Vec<f64>,
    error_norms: Option<Vec<f64>>,
    coefficients: Vec<Option<[Scalar; 3]>>,
}

impl IterationTrace {
    pub(crate) fn new(method: Method) -> Self {
        Self {
            method,
            iterates: Vec::new(),
            residual_norms: Vec::new(),
            error_norms: None,
            coefficients: Vec::new(),
        }
    }

    pub(crate) fn push(
        &mut self,
        split: &JacobiSplit,
        iterate: DenseVector,
        x_exact: Option<&DenseVector>,
        coeffs: Option<[Scalar; 3]>,
    ) -> Result<()> {
        self.residual_norms.push(split.residual_norm(&iterate)?);
        if let Some(exact) = x_exact {
            let err = exact.sub(&iterate).norm2();
            self.error_norms.get_or_insert_with(Vec::new).push(err);
        }
        if self.method != Method::Jacobi {
            self.coefficients.push(coeffs);
        }
        self.iterates.push(iterate);
        Ok(())
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of stored iterates, including the starting guess.
    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    pub fn iterate(&self, m: usize) -> &DenseVector {
        &self.iterates[m]
    }

    pub fn iterates(&self) -> &[DenseVector] {
        &self.iterates
    }

    pub fn residual_norms(&self) -> &[f64] {
        &self.residual_norms
    }

    /// Error norms `||x_exact - x^(m)||`, present when the exact solution
    /// was supplied.
    pub fn error_norms(&self) -> Option<&[f64]> {
        self.error_norms.as_deref()
    }

    /// Per-step coefficient triples; `None` for seed steps, empty for
    /// plain Jacobi.
    pub fn coefficients(&self) -> &[Option<[Scalar; 3]>] {
        &self.coefficients
    }
}

// ── Iteration ───────────────────────────────────────────────────────

/// Runs `steps` Jacobi iterations from `x0`, recording every iterate.
pub fn iterate(
    split: &JacobiSplit,
    x0: &DenseVector,
    steps: usize,
    x_exact: Option<&DenseVector>,
) -> Result<IterationTrace> {
    if x0.len() != split.dimension() {
        return Err(Error::DimensionMismatch {
            expected: format!("starting guess of length {}", split.dimension()),
            found: format!("length {}", x0.len()),
        });
    }
    let mut trace = IterationTrace::new(Method::Jacobi);
    let mut x = x0.clone();
    trace.push(split, x.clone(), x_exact, None)?;
    for _ in 1..=steps {
        x = split.step(&x)?;
        trace.push(split, x.clone(), x_exact, None)?;
    }
    Ok(trace)
}

/// Distance between the iterated error and the matrix-power prediction.
///
/// Starting from `x0 = x_exact - e0`, the error after `m` steps must equal
/// `M^m e0`; the return value is the Euclidean norm of the difference.
pub fn error_propagation_check(
    split: &JacobiSplit,
    x_exact: &DenseVector,
    e0: &DenseVector,
    m: usize,
) -> Result<f64> {
    let x0 = x_exact.sub(e0);
    let trace = iterate(split, &x0, m, Some(x_exact))?;
    let iterated_error = x_exact.sub(trace.iterate(m));
    let mut predicted = e0.clone();
    for _ in 0..m {
        predicted = split.iter_matrix().mul_vec(&predicted)?;
    }
    Ok(iterated_error.sub(&predicted).norm2())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::linalg::real;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_system_one_matches_printed_values() {
        let s = system_one();
        let m = s.iter_matrix();
        assert!((m.get(1, 0).re - (-1.0)).abs() < 1e-15);
        assert!((m.get(0, 3).re - (-1.0 / 576.0)).abs() < 1e-18);
        for i in 0..4 {
            assert_eq!(m.get(i, i).re, 0.0);
            assert_eq!(m.get(i, i).im, 0.0);
        }
        let g = s.offset();
        let expected = [577.0 / 576.0, 293.0 / 144.0, 313.0 / 144.0, 2.0];
        for (got, want) in g.iter().zip(expected) {
            assert!((got.re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn split_system_two_offset() {
        let s = system_two();
        let expected = [2267.0 / 2250.0, 4681.0 / 2250.0, 1853.0 / 900.0, 2.0];
        for (got, want) in s.offset().iter().zip(expected) {
            assert!((got.re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn split_identity() {
        let a = DenseMatrix::identity(3);
        let b = DenseVector::from_real(&[4.0, 5.0, 6.0]).unwrap();
        let s = JacobiSplit::new(a, b.clone()).unwrap();
        assert_eq!(s.iter_matrix().frobenius_norm(), 0.0);
        assert_eq!(s.offset(), &b);
    }

    #[test]
    fn split_reconstructs_input() {
        // D g = b and -D M = L + U, both within 1e-12.
        let s = system_two();
        let a = s.matrix();
        let n = a.rows();
        for i in 0..n {
            let d = a.get(i, i);
            let back = d * s.offset()[i];
            assert!((back - s.rhs()[i]).norm() <= 1e-12 * s.rhs()[i].norm().max(1.0));
            for j in 0..n {
                if i != j {
                    let lu_entry = -(d * s.iter_matrix().get(i, j));
                    assert!((lu_entry - a.get(i, j)).norm() <= 1e-12 * a.max_abs_entry());
                }
            }
        }
    }

    #[test]
    fn split_rejects_zero_diagonal() {
        let a = DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        let b = DenseVector::from_real(&[1.0, 2.0]).unwrap();
        match JacobiSplit::new(a, b) {
            Err(Error::ZeroDiagonal { row }) => assert_eq!(row, 0),
            other => panic!("expected ZeroDiagonal, got {other:?}"),
        }
    }

    #[test]
    fn iterate_system_one_first_step_and_errors() {
        let s = system_one();
        let trace = iterate(&s, &DenseVector::zeros(4), 8, Some(&ones(4))).unwrap();
        let x1 = trace.iterate(1);
        let printed = [1.001, 2.034, 2.173, 2.000];
        for (got, want) in x1.iter().zip(printed) {
            assert!((got.re - want).abs() < 5e-3);
        }
        let errors = trace.error_norms().unwrap();
        assert!((errors[0] - 2.000).abs() < 5e-4);
        assert!((errors[4] - 0.351).abs() < 5e-4);
    }

    #[test]
    fn iterate_system_two_error_sequence() {
        let s = system_two();
        let trace = iterate(&s, &DenseVector::zeros(4), 8, Some(&ones(4))).unwrap();
        let printed = [
            2.000, 1.813, 1.557, 1.152, 0.241, 0.194, 0.113, 0.037, 0.023,
        ];
        for (got, want) in trace.error_norms().unwrap().iter().zip(printed) {
            assert!((got - want).abs() < 5e-3, "{got} vs {want}");
        }
    }

    #[test]
    fn iterate_fixed_point() {
        let s = system_one();
        let exact = ones(4);
        let trace = iterate(&s, &exact, 12, Some(&exact)).unwrap();
        for e in trace.error_norms().unwrap() {
            assert!(*e <= 1e-12);
        }
    }

    #[test]
    fn error_linearity() {
        // Errors from e0 and c*e0 stay proportional by c.
        let s = system_one();
        let exact = ones(4);
        let e0 = DenseVector::from_real(&[0.3, -0.2, 0.5, 0.1]).unwrap();
        let c = 2.75;
        let t1 = iterate(&s, &exact.sub(&e0), 10, Some(&exact)).unwrap();
        let t2 = iterate(&s, &exact.sub(&e0.scale(real(c))), 10, Some(&exact)).unwrap();
        let (e1, e2) = (t1.error_norms().unwrap(), t2.error_norms().unwrap());
        for m in 0..e1.len() {
            assert!((e2[m] - c * e1[m]).abs() <= 1e-12 * c * e1[m].max(1e-30) + 1e-14);
        }
    }

    #[test]
    fn asymptotic_rate_near_spectral_radius() {
        // Geometric mean of successive error ratios approaches 0.5.
        let s = system_one();
        let trace = iterate(&s, &DenseVector::zeros(4), 22, Some(&ones(4))).unwrap();
        let e = trace.error_norms().unwrap();
        let mut log_sum = 0.0;
        let mut count = 0;
        for m in 4..=20 {
            log_sum += (e[m + 1] / e[m]).ln();
            count += 1;
        }
        let rate = (log_sum / count as f64).exp();
        assert!((rate - 0.5).abs() < 0.05, "rate {rate}");
    }

    #[test]
    fn error_propagation_matches_matrix_powers() {
        let s = system_one();
        let exact = ones(4);
        assert_eq!(
            error_propagation_check(&s, &exact, &DenseVector::zeros(4), 10).unwrap(),
            0.0
        );
        let gap = error_propagation_check(&s, &exact, &ones(4), 8).unwrap();
        assert!(gap <= 1e-10);

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let e0 =
            DenseVector::new((0..4).map(|_| real(rng.gen_range(-1.0..1.0))).collect()).unwrap();
        let one_step = error_propagation_check(&s, &exact, &e0, 1).unwrap();
        assert!(one_step <= 1e-14);
    }

    #[test]
    fn trace_bookkeeping() {
        let s = system_one();
        let trace = iterate(&s, &DenseVector::zeros(4), 5, None).unwrap();
        assert_eq!(trace.len(), 6);
        assert_eq!(trace.residual_norms().len(), 6);
        assert!(trace.error_norms().is_none());
        assert!(trace.coefficients().is_empty());
        assert_eq!(trace.method(), Method::Jacobi);
    }
}
