//! File formats: Matrix Market input, CSV trace output, scalar parsing.
//!
//! Matrices come in through the Matrix Market exchange format (`array` and
//! `coordinate`, real general only). Vectors are one-column `array` files.
//! Traces go out as CSV with one row per iteration index.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::jacobi::IterationTrace;
use crate::linalg::{real, scalar, DenseMatrix, DenseVector, Scalar};

// ── Matrix Market ───────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmLayout {
    Array,
    Coordinate,
}

struct MmHeader {
    layout: MmLayout,
}

fn parse_header(line: &str) -> Result<MmHeader> {
    let mut words = line.split_whitespace();
    if words.next() != Some("%%MatrixMarket") {
        return Err(Error::Parse {
            line: 1,
            message: "first line must start with %%MatrixMarket".into(),
        });
    }
    if words.next() != Some("matrix") {
        return Err(Error::Parse {
            line: 1,
            message: "expected object \"matrix\"".into(),
        });
    }
    let layout = match words.next() {
        Some("array") => MmLayout::Array,
        Some("coordinate") => MmLayout::Coordinate,
        other => {
            return Err(Error::Parse {
                line: 1,
                message: format!("unknown layout {:?}", other.unwrap_or("")),
            })
        }
    };
    match words.next() {
        Some("real") => {}
        Some(field) => return Err(Error::UnsupportedField(format!("field \"{field}\""))),
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing field qualifier".into(),
            })
        }
    }
    match words.next() {
        Some("general") => {}
        Some(sym) => return Err(Error::UnsupportedField(format!("symmetry \"{sym}\""))),
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing symmetry qualifier".into(),
            })
        }
    }
    Ok(MmHeader { layout })
}

/// Lines with 1-based numbers, comments and blanks skipped.
fn data_lines(content: &str) -> impl Iterator<Item = (usize, &str)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .skip(1) // header
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn parse_usize(word: &str, line: usize, what: &str) -> Result<usize> {
    word.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse {what} from \"{word}\""),
    })
}

fn parse_f64(word: &str, line: usize) -> Result<f64> {
    word.parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse value from \"{word}\""),
    })
}

/// Reads a real general Matrix Market file (array or coordinate layout)
/// into dense storage.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let content = fs::read_to_string(path)?;
    read_matrix_market_str(&content)
}

pub fn read_matrix_market_str(content: &str) -> Result<DenseMatrix> {
    let header = parse_header(content.lines().next().unwrap_or(""))?;
    let mut lines = data_lines(content);
    let (size_line_no, size_line) = lines.next().ok_or(Error::Parse {
        line: content.lines().count(),
        message: "missing size line".into(),
    })?;
    let words: Vec<&str> = size_line.split_whitespace().collect();
    match header.layout {
        MmLayout::Array => {
            if words.len() != 2 {
                return Err(Error::Parse {
                    line: size_line_no,
                    message: "array size line must be \"rows cols\"".into(),
                });
            }
            let rows = parse_usize(words[0], size_line_no, "row count")?;
            let cols = parse_usize(words[1], size_line_no, "column count")?;
            if rows == 0 || cols == 0 {
                return Err(Error::Parse {
                    line: size_line_no,
                    message: "dimensions must be positive".into(),
                });
            }
            // Array layout lists entries column-major.
            let mut values = Vec::with_capacity(rows * cols);
            for (line_no, line) in lines {
                for word in line.split_whitespace() {
                    values.push((parse_f64(word, line_no)?, line_no));
                }
            }
            if values.len() != rows * cols {
                return Err(Error::Parse {
                    line: values.last().map_or(size_line_no, |v| v.1),
                    message: format!("expected {} entries, found {}", rows * cols, values.len()),
                });
            }
            let mut m = DenseMatrix::zeros(rows, cols);
            for (k, (v, line_no)) in values.into_iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "non-finite entry".into(),
                    });
                }
                m.set(k % rows, k / rows, real(v));
            }
            Ok(m)
        }
        MmLayout::Coordinate => {
            if words.len() != 3 {
                return Err(Error::Parse {
                    line: size_line_no,
                    message: "coordinate size line must be \"rows cols nnz\"".into(),
                });
            }
            let rows = parse_usize(words[0], size_line_no, "row count")?;
            let cols = parse_usize(words[1], size_line_no, "column count")?;
            let nnz = parse_usize(words[2], size_line_no, "nonzero count")?;
            if rows == 0 || cols == 0 {
                return Err(Error::Parse {
                    line: size_line_no,
                    message: "dimensions must be positive".into(),
                });
            }
            let mut m = DenseMatrix::zeros(rows, cols);
            let mut seen = 0usize;
            for (line_no, line) in lines {
                let w: Vec<&str> = line.split_whitespace().collect();
                if w.len() != 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "coordinate entry must be \"i j value\"".into(),
                    });
                }
                let i = parse_usize(w[0], line_no, "row index")?;
                let j = parse_usize(w[1], line_no, "column index")?;
                let v = parse_f64(w[2], line_no)?;
                if i == 0 || i > rows || j == 0 || j > cols {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("index ({i}, {j}) out of bounds"),
                    });
                }
                // Duplicate entries accumulate, the usual COO convention.
                m.set(i - 1, j - 1, m.get(i - 1, j - 1) + real(v));
                seen += 1;
            }
            if seen != nnz {
                return Err(Error::Parse {
                    line: size_line_no,
                    message: format!("expected {nnz} entries, found {seen}"),
                });
            }
            Ok(m)
        }
    }
}

/// Writes a real matrix in array layout (column-major values).
pub fn write_matrix_market(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<()> {
    fs::write(path, matrix_market_string(m)?)?;
    Ok(())
}

pub fn matrix_market_string(m: &DenseMatrix) -> Result<String> {
    if !m.is_real() {
        return Err(Error::UnsupportedField(
            "complex matrices are not written".into(),
        ));
    }
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let _ = writeln!(out, "{}", m.get(i, j).re);
        }
    }
    Ok(out)
}

/// Reads a one-column array file as a vector.
pub fn read_vector(path: impl AsRef<Path>) -> Result<DenseVector> {
    let m = read_matrix_market(path)?;
    if m.cols() != 1 {
        return Err(Error::UnsupportedField(format!(
            "vectors must be one-column array files, found {} columns",
            m.cols()
        )));
    }
    Ok(m.column(0))
}

/// Writes a vector as a one-column array file.
pub fn write_vector(path: impl AsRef<Path>, v: &DenseVector) -> Result<()> {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} 1", v.len());
    for z in v.iter() {
        let _ = writeln!(out, "{}", z.re);
    }
    fs::write(path, out)?;
    Ok(())
}

// ── Scalar notation ─────────────────────────────────────────────────

/// Parses `re`, `re+imi` or `re-imi` (e.g. `0.2+0.333333i`, `-0.5`).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = |msg: &str| Error::InvalidConfig(format!("cannot parse scalar \"{t}\": {msg}"));
    if let Some(imag_part) = t.strip_suffix('i') {
        // Split at the sign that separates the real and imaginary terms:
        // the last '+'/'-' not in first position and not part of an exponent.
        let bytes = imag_part.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let k = split.ok_or_else(|| bad("missing real/imaginary separator"))?;
        let re: f64 = imag_part[..k].parse().map_err(|_| bad("bad real part"))?;
        let im: f64 = imag_part[k..]
            .parse()
            .map_err(|_| bad("bad imaginary part"))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(bad("non-finite"));
        }
        Ok(scalar(re, im))
    } else {
        let re: f64 = t.parse().map_err(|_| bad("bad real value"))?;
        if !re.is_finite() {
            return Err(bad("non-finite"));
        }
        Ok(real(re))
    }
}

/// Formats a scalar in the notation [`parse_scalar`] accepts.
pub fn format_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

// ── Trace CSV ───────────────────────────────────────────────────────

/// Renders a trace as CSV with header
/// `m,x_1..x_n,residual,error,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im`.
///
/// The error column is blank when no exact solution was supplied, and the
/// coefficient columns are blank on seed steps and plain Jacobi rows.
/// Complex iterate components are written in `re+imi` notation.
pub fn trace_to_csv(trace: &IterationTrace) -> String {
    let n = trace.iterate(0).len();
    let mut out = String::from("m");
    for i in 1..=n {
        let _ = write!(out, ",x_{i}");
    }
    out.push_str(",residual,error,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im\n");
    for m in 0..trace.len() {
        let _ = write!(out, "{m}");
        for z in trace.iterate(m).iter() {
            let _ = write!(out, ",{}", format_scalar(*z));
        }
        let _ = write!(out, ",{}", trace.residual_norms()[m]);
        match trace.error_norms() {
            Some(errors) => {
                let _ = write!(out, ",{}", errors[m]);
            }
            None => out.push(','),
        }
        match trace.coefficients().get(m).copied().flatten() {
            Some([c1, c2, c3]) => {
                let _ = write!(
                    out,
                    ",{},{},{},{},{},{}",
                    c1.re, c1.im, c2.re, c2.im, c3.re, c3.im
                );
            }
            None => out.push_str(",,,,,,"),
        }
        out.push('\n');
    }
    out
}

pub fn write_trace_csv(path: impl AsRef<Path>, trace: &IterationTrace) -> Result<()> {
    fs::write(path, trace_to_csv(trace))?;
    Ok(())
}

/// Residual and error columns read back from a trace CSV; used to confirm
/// files round-trip the norms printed to the console.
pub fn read_trace_norms(path: impl AsRef<Path>) -> Result<(Vec<f64>, Vec<Option<f64>>)> {
    let content = fs::read_to_string(path)?;
    let mut residuals = Vec::new();
    let mut errors = Vec::new();
    let mut lines = content.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty trace file".into(),
    })?;
    let columns: Vec<&str> = header.split(',').collect();
    let residual_col = columns
        .iter()
        .position(|c| *c == "residual")
        .ok_or(Error::Parse {
            line: 1,
            message: "missing residual column".into(),
        })?;
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < residual_col + 2 {
            return Err(Error::Parse {
                line: line_no + 1,
                message: "short row".into(),
            });
        }
        residuals.push(parse_f64(fields[residual_col], line_no + 1)?);
        let err_field = fields[residual_col + 1];
        errors.push(if err_field.is_empty() {
            None
        } else {
            Some(parse_f64(err_field, line_no + 1)?)
        });
    }
    Ok((residuals, errors))
}
