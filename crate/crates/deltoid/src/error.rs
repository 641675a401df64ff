//! Error type shared by every module of the crate.

use crate::linalg::Scalar;

/// Errors reported by solvers, factorizations and the CLI front end.
#[derive(Debug, Clone)]
pub enum Error {
    /// Operand shapes do not agree (matrix/vector products, solves, ...).
    DimensionMismatch { expected: String, found: String },
    /// A NaN or infinite entry was handed to a public constructor.
    NonFinite,
    /// A pivot fell below the relative singularity threshold.
    SingularMatrix,
    /// The Jacobi splitting hit a (near-)zero diagonal entry.
    ZeroDiagonal { row: usize },
    /// The QR eigenvalue iteration exceeded its sweep budget.
    NoConvergence { sweeps: usize },
    /// Two eigenvalues are closer than the distinctness threshold.
    RepeatedEigenvalue { gap: f64, threshold: f64 },
    /// Every eigenvalue is numerically zero; no dominant one exists.
    ZeroSpectrum,
    /// The iteration matrix has spectral radius >= 1.
    DivergentSpectrum { radius: f64 },
    /// Some eigenvalue ratio lambda/lambda1 falls outside the deltoid region.
    InadmissibleSpectrum { offenders: Vec<Scalar> },
    /// A matrix expected to be real kept a non-negligible imaginary part.
    NonRealResult { imag_norm: f64 },
    /// Scalar argument outside the operation's domain.
    OutOfRange(String),
    /// Rate-estimation window contained no usable ratios.
    EmptyWindow,
    /// File parse failure with a 1-based line number.
    Parse { line: usize, message: String },
    /// Matrix Market field/symmetry combination this reader does not accept.
    UnsupportedField(String),
    /// Invalid run configuration (bad flag values, missing inputs).
    InvalidConfig(String),
    /// Underlying I/O failure.
    Io(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite => write!(f, "non-finite entry (NaN or infinity)"),
            Error::SingularMatrix => write!(f, "matrix is singular to working precision"),
            Error::ZeroDiagonal { row } => {
                write!(
                    f,
                    "zero diagonal entry at row {row}; Jacobi splitting undefined"
                )
            }
            Error::NoConvergence { sweeps } => {
                write!(
                    f,
                    "eigenvalue iteration did not converge after {sweeps} sweeps"
                )
            }
            Error::RepeatedEigenvalue { gap, threshold } => write!(
                f,
                "repeated eigenvalue: gap {gap:.3e} below distinctness threshold {threshold:.3e}"
            ),
            Error::ZeroSpectrum => write!(f, "all eigenvalues are numerically zero"),
            Error::DivergentSpectrum { radius } => {
                write!(
                    f,
                    "spectral radius {radius} is not below 1; iteration diverges"
                )
            }
            Error::InadmissibleSpectrum { offenders } => {
                write!(f, "eigenvalue ratios outside the deltoid region:")?;
                for z in offenders {
                    write!(f, " {}+{}i", z.re, z.im)?;
                }
                Ok(())
            }
            Error::NonRealResult { imag_norm } => write!(
                f,
                "companion matrix failed to come out real (imaginary norm {imag_norm:.3e}); \
                 conjugate pairing is broken"
            ),
            Error::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            Error::EmptyWindow => write!(f, "no usable ratios in the requested window"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::UnsupportedField(what) => write!(f, "unsupported Matrix Market file: {what}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Io(msg) => write!(f, "I/O error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
