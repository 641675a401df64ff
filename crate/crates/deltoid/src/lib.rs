//! Semi-iterative acceleration of stationary linear solvers.
//!
//! The crate bundles three ways of running the same splitting-based
//! iteration `x = M x + g` to solve `A x = b`:
//!
//! * plain Jacobi iteration ([`jacobi`]),
//! * the classical Chebyshev semi-iterative accelerator, driven by the
//!   spectral radius of `M` ([`chebyshev`]),
//! * a three-term accelerator built on bivariate Chebyshev polynomials whose
//!   stability region is the deltoid (Steiner hypocycloid) instead of the
//!   interval `[-1, 1]`, which admits complex spectra ([`gencheb`]).
//!
//! [`analysis`] derives the asymptotic convergence factor of each method
//! from block companion matrices and measures empirical rates from traces;
//! [`eigen`] supplies the spectra the accelerators need. See the `examples/`
//! directory for runnable walkthroughs of each capability, and the `deltoid`
//! binary for the batch CLI (`solve`, `analyze`, `deltoid`, `repro`).
//!
//! Every type is immutable after construction and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.

pub mod analysis;
pub mod chebyshev;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod gencheb;
pub mod io;
pub mod jacobi;
pub mod linalg;
pub mod repro;

pub use eigen::Spectrum;
pub use error::{Error, Result};
pub use gencheb::GenChebOperator;
pub use jacobi::{IterationTrace, JacobiSplit, Method};
pub use linalg::{DenseMatrix, DenseVector, LuFactors, Scalar};
