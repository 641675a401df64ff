//! Dense complex-capable vectors and matrices with LU factorization.
//!
//! Everything downstream (splittings, eigen computations, accelerators) runs
//! on these types. All arithmetic is complex; real data keeps exact zero
//! imaginary parts, so real-input pipelines produce bit-identical results to
//! a purely real implementation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for every entry, eigenvalue and coefficient.
pub type Scalar = Complex64;

/// Shorthand constructor mirroring `Complex64::new`.
#[inline]
pub fn scalar(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

/// Real scalar promoted to a complex value with exact zero imaginary part.
#[inline]
pub fn real(re: f64) -> Scalar {
    Scalar::new(re, 0.0)
}

fn check_finite<'a>(entries: impl Iterator<Item = &'a Scalar>) -> Result<()> {
    for z in entries {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

// ── DenseVector ─────────────────────────────────────────────────────

/// Dense column vector. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    entries: Vec<Scalar>,
}

impl DenseVector {
    /// Builds a vector, rejecting NaN/infinite entries.
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        check_finite(entries.iter())?;
        Ok(Self { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| real(v)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Scalar::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    /// Euclidean norm sqrt(sum |v_i|^2).
    pub fn norm2(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Maximum entry modulus.
    pub fn norm_inf(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Componentwise sum; lengths must already agree.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference; lengths must already agree.
    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Scalar) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Largest imaginary-part magnitude, used to detect real vectors.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for DenseVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

// ── DenseMatrix ─────────────────────────────────────────────────────

/// Dense row-major matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    /// Builds an `rows x cols` matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidConfig(
                "matrix dimensions must be >= 1".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries ({rows}x{cols})", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        check_finite(entries.iter())?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidConfig("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| real(v)))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = real(1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> DenseVector {
        DenseVector {
            entries: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &DenseVector) -> Result<DenseVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("vector of length {}", v.len()),
            });
        }
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.iter())
                    .map(|(a, x)| a * x)
                    .sum::<Scalar>()
            })
            .collect();
        Ok(DenseVector { entries })
    }

    /// Matrix-matrix product.
    pub fn mul_mat(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("matrix with {} rows", self.cols),
                found: format!("matrix with {} rows", other.rows),
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Scalar::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.add(&other.scale(real(-1.0)))
    }

    pub fn scale(&self, factor: Scalar) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the imaginary part alone.
    pub fn imag_frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.im * z.im).sum::<f64>().sqrt()
    }

    /// Largest imaginary-part magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Copy with every imaginary part forced to exactly zero.
    pub fn real_part(&self) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| real(z.re)).collect(),
        }
    }

    /// True when every entry has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<LuFactors> {
        LuFactors::factor(self)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

// ── LU factorization ────────────────────────────────────────────────

/// Pivot-singularity threshold, relative to the largest initial entry.
const PIVOT_RELATIVE_TOL: f64 = 1e-13;

/// Packed LU factors of a square matrix, `P A = L U`.
///
/// `perm[i]` names the row of the original matrix that was moved to row `i`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
    sign: i32,
}

impl LuFactors {
    /// Factors a square matrix, choosing the largest-modulus pivot per column.
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", a.rows, a.cols),
            });
        }
        let n = a.rows;
        let scale = a.max_abs_entry();
        let threshold = PIVOT_RELATIVE_TOL * scale;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1;

        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu.get(k, k).norm();
            for i in (k + 1)..n {
                let mag = lu.get(i, k).norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = i;
                }
            }
            if pivot_mag < threshold || pivot_mag == 0.0 {
                return Err(Error::SingularMatrix);
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu.get(k, j);
                    lu.set(k, j, lu.get(pivot_row, j));
                    lu.set(pivot_row, j, tmp);
                }
                perm.swap(k, pivot_row);
                sign = -sign;
            }
            let pivot = lu.get(k, k);
            for i in (k + 1)..n {
                let factor = lu.get(i, k) / pivot;
                lu.set(i, k, factor);
                for j in (k + 1)..n {
                    let v = lu.get(i, j) - factor * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(Self { lu, perm, sign })
    }

    pub fn dimension(&self) -> usize {
        self.lu.rows
    }

    /// Permutation parity: +1 for an even number of row swaps, -1 for odd.
    pub fn sign(&self) -> i32 {
        self.sign
    }

    /// Determinant of the factored matrix: parity times the pivot product.
    pub fn determinant(&self) -> Scalar {
        let mut det = real(self.sign as f64);
        for i in 0..self.dimension() {
            det *= self.lu.get(i, i);
        }
        det
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Solves `A x = b` using the stored factors.
    pub fn solve(&self, b: &DenseVector) -> Result<DenseVector> {
        let n = self.dimension();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {n}"),
                found: format!("vector of length {}", b.len()),
            });
        }
        // Forward substitution on the permuted right-hand side (L has unit diagonal).
        let mut y: Vec<Scalar> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                let yj = y[j];
                y[i] -= self.lu.get(i, j) * yj;
            }
        }
        // Back substitution with U.
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let yj = y[j];
                y[i] -= self.lu.get(i, j) * yj;
            }
            y[i] /= self.lu.get(i, i);
        }
        Ok(DenseVector { entries: y })
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        let n = self.dimension();
        if b.rows != n {
            return Err(Error::DimensionMismatch {
                expected: format!("matrix with {n} rows"),
                found: format!("matrix with {} rows", b.rows),
            });
        }
        let mut out = DenseMatrix::zeros(n, b.cols);
        for j in 0..b.cols {
            let x = self.solve(&b.column(j))?;
            for i in 0..n {
                out.set(i, j, x[i]);
            }
        }
        Ok(out)
    }
}
