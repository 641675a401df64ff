//! Full spectrum of small dense real unsymmetric matrices.
//!
//! Eigenvalues come from Householder Hessenberg reduction followed by the
//! Francis double-shift QR iteration (EISPACK `hqr` lineage), so real input
//! never touches complex arithmetic until a 2x2 trailing block is resolved
//! analytically into a conjugate pair. Eigenvectors come from inverse
//! iteration with the computed eigenvalue as shift, normalized so that
//! conjugate pairs are componentwise exact conjugates of each other.

use crate::error::{Error, Result};
use crate::linalg::{real, scalar, DenseMatrix, DenseVector, Scalar};

/// Subdiagonal entries below this multiple of their diagonal neighbours
/// are treated as zero during QR deflation.
const DEFLATION_TOL: f64 = 1e-14;

/// Relative gap under which two eigenvalues count as repeated.
const DISTINCTNESS_TOL: f64 = 1e-8;

/// Residual bound, relative to the Frobenius norm, required of every
/// computed eigenpair.
const RESIDUAL_TOL: f64 = 1e-8;

// ── Spectrum ────────────────────────────────────────────────────────

/// Eigenvalues with conjugate-consistent eigenvectors.
///
/// Column `j` of `eigenvectors` belongs to `eigenvalues[j]`. Each vector has
/// unit Euclidean norm with its largest-modulus component rotated to the
/// positive real axis, and `pairing[j]` names the index carrying the complex
/// conjugate eigenvalue (itself for real eigenvalues). Paired columns are
/// componentwise exact conjugates.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<Scalar>,
    eigenvectors: DenseMatrix,
    pairing: Vec<usize>,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    /// Eigenvector matrix; column `j` pairs with `eigenvalues()[j]`.
    pub fn eigenvectors(&self) -> &DenseMatrix {
        &self.eigenvectors
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn eigenvector(&self, j: usize) -> DenseVector {
        self.eigenvectors.column(j)
    }

    /// Maximum eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(&self.eigenvalues)
    }

    /// Coordinates of `v` in the eigenvector basis: solves `P alpha = v`.
    pub fn coordinates(&self, v: &DenseVector) -> Result<ErrorCoordinates> {
        let alphas = self.eigenvectors.lu()?.solve(v)?;
        Ok(ErrorCoordinates {
            alphas: alphas.as_slice().to_vec(),
        })
    }
}

/// Expansion coefficients of a vector over the eigenvector columns.
#[derive(Debug, Clone)]
pub struct ErrorCoordinates {
    alphas: Vec<Scalar>,
}

impl ErrorCoordinates {
    pub fn alphas(&self) -> &[Scalar] {
        &self.alphas
    }
}

/// Maximum modulus over a list of eigenvalues.
pub fn spectral_radius(eigenvalues: &[Scalar]) -> f64 {
    eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ── Hessenberg reduction ────────────────────────────────────────────

fn require_real_square(a: &DenseMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    if !a.is_real() {
        return Err(Error::InvalidConfig(
            "eigen routines accept real matrices only".into(),
        ));
    }
    Ok(a.rows())
}

/// Householder reduction to upper Hessenberg form.
///
/// Returns `(H, Q)` with `Q` orthogonal and `Q^T A Q = H`; entries below the
/// first subdiagonal of `H` are exactly zero.
pub fn hessenberg(a: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = require_real_square(a)?;
    let mut h: Vec<f64> = (0..n * n).map(|i| a.get(i / n, i % n).re).collect();
    let mut q: Vec<f64> = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    let idx = |i: usize, j: usize| i * n + j;

    for k in 0..n.saturating_sub(2) {
        // Householder vector that zeroes column k below the subdiagonal.
        let mut norm_sq = 0.0;
        for i in (k + 1)..n {
            norm_sq += h[idx(i, k)] * h[idx(i, k)];
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if h[idx(k + 1, k)] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        for i in (k + 1)..n {
            v[i] = h[idx(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm < f64::MIN_POSITIVE.sqrt() {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // H <- P H P with P = I - 2 v v^T (v supported on rows k+1..n).
        for j in 0..n {
            let dot: f64 = ((k + 1)..n).map(|i| v[i] * h[idx(i, j)]).sum();
            for i in (k + 1)..n {
                h[idx(i, j)] -= 2.0 * v[i] * dot;
            }
        }
        for i in 0..n {
            let dot: f64 = ((k + 1)..n).map(|j| v[j] * h[idx(i, j)]).sum();
            for j in (k + 1)..n {
                h[idx(i, j)] -= 2.0 * v[j] * dot;
            }
        }
        // Q <- Q P.
        for i in 0..n {
            let dot: f64 = ((k + 1)..n).map(|j| v[j] * q[idx(i, j)]).sum();
            for j in (k + 1)..n {
                q[idx(i, j)] -= 2.0 * v[j] * dot;
            }
        }
    }
    // Force exact zeros below the subdiagonal.
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            h[idx(i, j)] = 0.0;
        }
    }
    let h = DenseMatrix::new(n, n, h.into_iter().map(real).collect())?;
    let q = DenseMatrix::new(n, n, q.into_iter().map(real).collect())?;
    Ok((h, q))
}

// ── Francis double-shift QR (eigenvalues) ───────────────────────────

/// All eigenvalues of a real square matrix, as an unordered multiset.
///
/// Complex eigenvalues emerge from trailing 2x2 blocks as exact conjugate
/// pairs (identical real parts, opposite imaginary parts).
pub fn eigenvalues(a: &DenseMatrix) -> Result<Vec<Scalar>> {
    let n = require_real_square(a)?;
    if n == 1 {
        return Ok(vec![a.get(0, 0)]);
    }
    let (h, _) = hessenberg(a)?;
    let mut hm: Vec<f64> = (0..n * n).map(|i| h.get(i / n, i % n).re).collect();
    francis_eigenvalues(&mut hm, n)
}

/// Francis double-shift QR with deflation on an upper Hessenberg matrix,
/// following the EISPACK `hqr` structure (eigenvalues only).
fn francis_eigenvalues(h: &mut [f64], n: usize) -> Result<Vec<Scalar>> {
    let idx = |i: usize, j: usize| i * n + j;
    let hnorm: f64 = h
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let sweep_budget = 100 * n;

    let mut eigs: Vec<Scalar> = Vec::with_capacity(n);
    let mut en = n - 1; // active block end
    let mut exshift = 0.0;
    let mut its = 0usize; // sweeps since the last deflation

    'deflate: loop {
        // Find the start of the unreduced block ending at `en`.
        let mut l = en;
        while l > 0 {
            let s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
            let s = if s == 0.0 { hnorm } else { s };
            if h[idx(l, l - 1)].abs() <= DEFLATION_TOL * s {
                h[idx(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        if l == en {
            // Single real eigenvalue.
            eigs.push(real(h[idx(en, en)] + exshift));
            its = 0;
            if en == 0 {
                break;
            }
            en -= 1;
            continue;
        }
        if l + 1 == en {
            // 2x2 block: resolve analytically.
            let x = h[idx(en, en)] + exshift;
            let p = (h[idx(en - 1, en - 1)] - h[idx(en, en)]) / 2.0;
            let q = p * p + h[idx(en, en - 1)] * h[idx(en - 1, en)];
            let z = q.abs().sqrt();
            if q >= 0.0 {
                let z = if p >= 0.0 { p + z } else { p - z };
                let lam1 = x + z;
                let lam2 = if z != 0.0 { x - (q - p * p) / z } else { lam1 };
                eigs.push(real(lam1));
                eigs.push(real(lam2));
            } else {
                eigs.push(scalar(x + p, z));
                eigs.push(scalar(x + p, -z));
            }
            its = 0;
            if en == 1 {
                break;
            }
            en -= 2;
            continue;
        }

        // Double-shift sweep on the active block l..=en.
        its += 1;
        if its > sweep_budget {
            return Err(Error::NoConvergence { sweeps: its });
        }
        let mut x = h[idx(en, en)];
        let mut y = h[idx(en - 1, en - 1)];
        let mut w = h[idx(en, en - 1)] * h[idx(en - 1, en)];
        if its.is_multiple_of(10) {
            // Ad hoc exceptional shift to break cycling. Every row that can
            // still deflate (0..=en) must be shifted, not just the active
            // block, since exshift is added back at extraction time.
            exshift += x;
            for i in 0..=en {
                h[idx(i, i)] -= x;
            }
            let s = h[idx(en, en - 1)].abs() + h[idx(en - 1, en - 2)].abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }

        // Look for two consecutive small subdiagonal elements.
        let mut m = en - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = h[idx(m, m)];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
            q = h[idx(m + 1, m + 1)] - z - rr - ss;
            r = h[idx(m + 2, m + 1)];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let tst1 =
                p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs());
            if h[idx(m, m - 1)].abs() * (q.abs() + r.abs()) <= DEFLATION_TOL * tst1 {
                break;
            }
            m -= 1;
        }
        for i in (m + 2)..=en {
            h[idx(i, i - 2)] = 0.0;
            if i > m + 2 {
                h[idx(i, i - 3)] = 0.0;
            }
        }

        // Chase the bulge: double QR step on rows/columns l..=en.
        for k in m..en {
            let notlast = k != en - 1;
            if k != m {
                p = h[idx(k, k - 1)];
                q = h[idx(k + 1, k - 1)];
                r = if notlast { h[idx(k + 2, k - 1)] } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x == 0.0 {
                    continue;
                }
                p /= x;
                q /= x;
                r /= x;
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if k != m {
                h[idx(k, k - 1)] = -s * x;
            } else if l != m {
                h[idx(k, k - 1)] = -h[idx(k, k - 1)];
            }
            p += s;
            x = p / s;
            y = q / s;
            let zz = r / s;
            q /= p;
            r /= p;

            // Row modification.
            for j in k..=en {
                let mut pp = h[idx(k, j)] + q * h[idx(k + 1, j)];
                if notlast {
                    pp += r * h[idx(k + 2, j)];
                    h[idx(k + 2, j)] -= pp * zz;
                }
                h[idx(k + 1, j)] -= pp * y;
                h[idx(k, j)] -= pp * x;
            }
            // Column modification.
            let upper = en.min(k + 3);
            for i in l..=upper {
                let mut pp = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                if notlast {
                    pp += zz * h[idx(i, k + 2)];
                    h[idx(i, k + 2)] -= pp * r;
                }
                h[idx(i, k + 1)] -= pp * q;
                h[idx(i, k)] -= pp;
            }
        }
        if eigs.len() == n {
            break 'deflate;
        }
    }
    Ok(eigs)
}

// ── Eigenpairs via inverse iteration ────────────────────────────────

/// Full spectrum with eigenvectors, for matrices with distinct eigenvalues.
pub fn eigenpairs(a: &DenseMatrix) -> Result<Spectrum> {
    let n = require_real_square(a)?;
    let mut vals = eigenvalues(a)?;
    // Deterministic order: descending real part, then descending imaginary
    // part, which also places each conjugate pair adjacently (+im first).
    vals.sort_by(|u, v| v.re.total_cmp(&u.re).then(v.im.total_cmp(&u.im)));

    let fnorm = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = DISTINCTNESS_TOL * fnorm;
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (vals[i] - vals[j]).norm();
            if gap <= threshold {
                return Err(Error::RepeatedEigenvalue { gap, threshold });
            }
        }
    }

    // Conjugate pairing (pairs are exact by construction of the QR blocks).
    let mut pairing: Vec<usize> = (0..n).collect();
    for j in 0..n {
        if vals[j].im > 0.0 {
            let partner = (0..n)
                .find(|&k| k != j && (vals[k] - vals[j].conj()).norm() <= 1e-12 * fnorm)
                .ok_or(Error::NonRealResult {
                    imag_norm: vals[j].im.abs(),
                })?;
            pairing[j] = partner;
            pairing[partner] = j;
        }
    }

    let mut vectors = DenseMatrix::zeros(n, n);
    for j in 0..n {
        if vals[j].im < 0.0 {
            continue; // filled from the conjugate partner below
        }
        let v = inverse_iteration(a, vals[j], fnorm)?;
        for i in 0..n {
            vectors.set(i, j, v[i]);
        }
        if vals[j].im > 0.0 {
            let partner = pairing[j];
            for i in 0..n {
                vectors.set(i, partner, v[i].conj());
            }
        }
    }

    let spectrum = Spectrum {
        eigenvalues: vals,
        eigenvectors: vectors,
        pairing,
    };
    // Final residual audit over every pair.
    for j in 0..n {
        let v = spectrum.eigenvector(j);
        let res = a
            .mul_vec(&v)?
            .sub(&v.scale(spectrum.eigenvalues[j]))
            .norm2();
        if res > RESIDUAL_TOL * fnorm {
            return Err(Error::NoConvergence { sweeps: 0 });
        }
    }
    Ok(spectrum)
}

/// One eigenvector by shifted inverse iteration, normalized to unit norm
/// with the largest-modulus component rotated onto the positive real axis.
fn inverse_iteration(a: &DenseMatrix, lambda: Scalar, fnorm: f64) -> Result<DenseVector> {
    let n = a.rows();
    let mut shift = lambda;
    let mut perturb = 1e-12 * fnorm.max(1e-30);
    let factors = loop {
        let mut shifted = a.clone();
        for i in 0..n {
            shifted.set(i, i, shifted.get(i, i) - shift);
        }
        match shifted.lu() {
            Ok(f) => break f,
            Err(Error::SingularMatrix) => {
                // Exactly singular shift: nudge it off the eigenvalue.
                shift = lambda + real(perturb);
                perturb *= 16.0;
                if perturb > 1e-3 * fnorm {
                    return Err(Error::SingularMatrix);
                }
            }
            Err(e) => return Err(e),
        }
    };

    // Deterministic, generically non-orthogonal start vector.
    let mut v = DenseVector::new((0..n).map(|i| real(((i + 1) as f64).cos() + 1.5)).collect())?;
    v = v.scale(real(1.0 / v.norm2()));

    let mut best: Option<(DenseVector, f64)> = None;
    let mut stalled = 0;
    for _ in 0..50 {
        let w = factors.solve(&v)?;
        let nw = w.norm2();
        if !nw.is_finite() || nw == 0.0 {
            break;
        }
        v = w.scale(real(1.0 / nw));
        let residual = a.mul_vec(&v)?.sub(&v.scale(lambda)).norm2();
        let improved = best.as_ref().is_none_or(|(_, r)| residual < *r);
        if improved {
            best = Some((v.clone(), residual));
            stalled = 0;
        } else {
            stalled += 1;
        }
        // Drive the residual to rounding level; stop once it stagnates.
        if residual <= 1e-15 * fnorm || stalled >= 2 {
            break;
        }
    }
    let (v, _) = best.ok_or(Error::NoConvergence { sweeps: 0 })?;

    // Phase normalization: largest-modulus component becomes real positive.
    let mut k = 0;
    let mut mag = 0.0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > mag {
            mag = z.norm();
            k = i;
        }
    }
    let phase = v[k] / real(v[k].norm());
    Ok(v.scale(phase.conj()))
}

// ── Dominant eigenvalue ─────────────────────────────────────────────

/// Eigenvalue of maximal modulus.
///
/// Ties (within 1e-12 relative) prefer a real eigenvalue, then the largest
/// real part, then positive imaginary part.
pub fn dominant_eigenvalue(spectrum: &Spectrum) -> Result<Scalar> {
    dominant_of(spectrum.eigenvalues())
}

pub(crate) fn dominant_of(eigenvalues: &[Scalar]) -> Result<Scalar> {
    let radius = spectral_radius(eigenvalues);
    if radius < 1e-14 {
        return Err(Error::ZeroSpectrum);
    }
    let mut candidates: Vec<Scalar> = eigenvalues
        .iter()
        .copied()
        .filter(|z| z.norm() >= radius * (1.0 - 1e-12))
        .collect();
    candidates.sort_by(|u, v| {
        let u_real = u.im == 0.0;
        let v_real = v.im == 0.0;
        v_real
            .cmp(&u_real)
            .then(v.re.total_cmp(&u.re))
            .then(v.im.total_cmp(&u.im))
    });
    Ok(candidates[0])
}

// ── Polynomial roots via companion matrices ─────────────────────────

/// Roots of the monic polynomial `z^k + c[k-1] z^(k-1) + ... + c[0]`,
/// computed as eigenvalues of its companion matrix.
///
/// Real-coefficient polynomials run through the Francis iteration; complex
/// coefficients use a shifted complex QR on the (already Hessenberg)
/// companion matrix.
pub fn polynomial_roots(coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let k = coeffs.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    if coeffs.iter().all(|c| c.im == 0.0) {
        let mut companion = DenseMatrix::zeros(k, k);
        for i in 0..k {
            companion.set(0, i, real(-coeffs[k - 1 - i].re));
        }
        for i in 1..k {
            companion.set(i, i - 1, real(1.0));
        }
        return eigenvalues(&companion);
    }
    let mut companion = DenseMatrix::zeros(k, k);
    for i in 0..k {
        companion.set(0, i, -coeffs[k - 1 - i]);
    }
    for i in 1..k {
        companion.set(i, i - 1, real(1.0));
    }
    complex_hessenberg_eigenvalues(companion)
}

/// Single-shift QR with deflation for small complex Hessenberg matrices.
fn complex_hessenberg_eigenvalues(mut h: DenseMatrix) -> Result<Vec<Scalar>> {
    let n = h.rows();
    let hnorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut eigs = Vec::with_capacity(n);
    let mut en = n - 1;
    let mut its = 0usize;
    let budget = 100 * n.max(1);

    loop {
        let mut l = en;
        while l > 0 {
            let s = h.get(l - 1, l - 1).norm() + h.get(l, l).norm();
            let s = if s == 0.0 { hnorm } else { s };
            if h.get(l, l - 1).norm() <= DEFLATION_TOL * s {
                h.set(l, l - 1, real(0.0));
                break;
            }
            l -= 1;
        }
        if l == en {
            eigs.push(h.get(en, en));
            its = 0;
            if en == 0 {
                break;
            }
            en -= 1;
            continue;
        }
        its += 1;
        if its > budget {
            return Err(Error::NoConvergence { sweeps: its });
        }
        // Wilkinson shift: trailing 2x2 eigenvalue closest to the corner.
        let a = h.get(en - 1, en - 1);
        let b = h.get(en - 1, en);
        let c = h.get(en, en - 1);
        let d = h.get(en, en);
        let tr = a + d;
        let disc = (tr * tr * real(0.25) - (a * d - b * c)).sqrt();
        let mu1 = tr * real(0.5) + disc;
        let mu2 = tr * real(0.5) - disc;
        let mut shift = if (mu1 - d).norm() <= (mu2 - d).norm() {
            mu1
        } else {
            mu2
        };
        if its.is_multiple_of(10) {
            shift = d + real(h.get(en, en - 1).norm());
        }

        // Explicit QR of the shifted active block via Givens rotations.
        let dim = en - l + 1;
        let mut block = DenseMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                block.set(i, j, h.get(l + i, l + j));
            }
            block.set(i, i, block.get(i, i) - shift);
        }
        let mut rotations: Vec<(usize, f64, Scalar)> = Vec::new();
        for k in 0..dim - 1 {
            let f = block.get(k, k);
            let g = block.get(k + 1, k);
            let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
            if denom == 0.0 {
                rotations.push((k, 1.0, real(0.0)));
                continue;
            }
            let cs = f.norm() / denom;
            let sn = if f.norm() == 0.0 {
                g.conj() / real(denom)
            } else {
                (f / real(f.norm())) * g.conj() / real(denom)
            };
            // Apply [cs, sn; -conj(sn), cs] to rows k, k+1.
            for j in 0..dim {
                let x = block.get(k, j);
                let y = block.get(k + 1, j);
                block.set(k, j, x * real(cs) + y * sn);
                block.set(k + 1, j, -x * sn.conj() + y * real(cs));
            }
            rotations.push((k, cs, sn));
        }
        // RQ: apply transposed-conjugate rotations from the right.
        for &(k, cs, sn) in &rotations {
            for i in 0..dim {
                let x = block.get(i, k);
                let y = block.get(i, k + 1);
                block.set(i, k, x * real(cs) + y * sn.conj());
                block.set(i, k + 1, -x * sn + y * real(cs));
            }
        }
        for i in 0..dim {
            block.set(i, i, block.get(i, i) + shift);
            for j in 0..dim {
                h.set(l + i, l + j, block.get(i, j));
            }
        }
    }
    Ok(eigs)
}
