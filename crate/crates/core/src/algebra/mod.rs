//! The observable algebra: exact scalars, hbar series, normal-ordered
//! monomials and the observables built from them.

mod hbar;
mod monomial;
mod observable;
mod ordering;
mod scalar;

pub use hbar::HbarSeries;
pub use monomial::QCMonomial;
pub use observable::Observable;
pub use ordering::{reorder, reorder_terms, ReorderTerm};
pub use scalar::GaussianRational;
