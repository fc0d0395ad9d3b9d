//! Exact symbolic algebra for observables built from a classical pair
//! `(x, k)` and a quantum pair `(q, p)` with `[q, p] = i hbar`.
//!
//! Coefficients are polynomials in a formal `hbar` over the Gaussian
//! rationals, so every bracket, residual and counterexample is computed
//! exactly. The crate provides
//!
//! * [`algebra`]: the normal-ordered observable algebra,
//! * [`brackets`]: Poisson, commutator, Aleksandrov and normal-ordered
//!   brackets plus Jacobi, Leibniz, axiom and classical-limit residuals,
//! * [`explorer`]: exhaustive monomial scans and random sweeps,
//! * [`cli`]: the expression syntax, canonical text, JSON and the `qcb` tool.
//!
//! ```
//! use qcbracket::{brackets::{jacobi_residual, BracketKind}, cli::{format, parse}};
//!
//! let a = parse("k*p").unwrap();
//! let b = parse("x*p").unwrap();
//! let c = parse("q^2").unwrap();
//! let report = jacobi_residual(BracketKind::NormalOrder, &a, &b, &c).unwrap();
//! assert_eq!(format(&report.residual), "-2*i*hbar");
//! ```

pub mod algebra;
pub mod brackets;
pub mod cli;
mod error;
pub mod explorer;

pub use algebra::{GaussianRational, HbarSeries, Observable, QCMonomial};
pub use brackets::{BracketKind, ResidualReport};
pub use error::{Error, Result};
