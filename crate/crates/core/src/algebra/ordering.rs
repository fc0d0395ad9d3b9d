//! Normal ordering of quantum words.
//!
//! Moving one `p` past one `q` uses `p q = q p - i hbar`. The product
//! `p^t q^r` then expands as
//!
//! ```text
//! p^t q^r = sum_j  j! C(t,j) C(r,j) (-i hbar)^j  q^(r-j) p^(t-j)
//! ```
//!
//! where `j` counts contractions of a `p` with a `q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hbar::HbarSeries;
use super::monomial::QCMonomial;
use super::observable::Observable;
use super::scalar::GaussianRational;

/// One term of the expansion of `p^t q^r`: `coeff * hbar^hbar_degree * q^q p^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReorderTerm {
    pub q: u32,
    pub p: u32,
    pub hbar_degree: u32,
    pub coeff: GaussianRational,
}

/// Closed-form contraction expansion of `p^t q^r`, ordered by contraction count.
pub fn reorder_terms(t: u32, r: u32) -> Vec<ReorderTerm> {
    let contractions = t.min(r);
    let mut out = Vec::with_capacity(contractions as usize + 1);
    // j! C(t,j) C(r,j), updated incrementally:
    // w(j+1) = w(j) * (t-j)(r-j)/(j+1)
    let mut weight = BigInt::one();
    let mut phase = GaussianRational::one();
    let minus_i = -GaussianRational::i();
    for j in 0..=contractions {
        out.push(ReorderTerm {
            q: r - j,
            p: t - j,
            hbar_degree: j,
            coeff: &phase * &GaussianRational::real(BigRational::from_integer(weight.clone())),
        });
        weight = weight * BigInt::from(t - j) * BigInt::from(r - j) / BigInt::from(j + 1);
        phase = &phase * &minus_i;
    }
    debug_assert!(out.iter().all(|term| !term.coeff.is_zero()));
    out
}

/// The normal-ordered form of the word `p^t q^r`.
pub fn reorder(t: u32, r: u32) -> Observable {
    Observable::from_terms(reorder_terms(t, r).into_iter().map(|term| {
        (
            QCMonomial::new(0, 0, term.q, term.p),
            HbarSeries::monomial(term.coeff, term.hbar_degree),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs(s: &str) -> Observable {
        crate::cli::parse(s).unwrap()
    }

    #[test]
    fn single_swap() {
        assert_eq!(reorder(1, 1), obs("q*p - i*hbar"));
    }

    #[test]
    fn already_ordered() {
        for r in 0..5 {
            assert_eq!(reorder(0, r), Observable::monomial(QCMonomial::new(0, 0, r, 0)));
            assert_eq!(reorder(r, 0), Observable::monomial(QCMonomial::new(0, 0, 0, r)));
        }
    }

    #[test]
    fn frozen_swap_oracle_values() {
        // Values produced by the adjacent-swap rewriting oracle in tests/common.
        assert_eq!(reorder(2, 1), obs("q*p^2 - 2*i*hbar*p"));
        assert_eq!(reorder(2, 2), obs("q^2*p^2 - 4*i*hbar*q*p - 2*hbar^2"));
    }
}
