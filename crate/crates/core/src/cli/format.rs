//! Canonical text form of observables.
//!
//! Every `(monomial, hbar-degree)` pair becomes its own summand. Summands run
//! in display order (grade descending, `x > k > q > p`) and, within one
//! monomial, by ascending hbar-degree. The output always parses back to the
//! same observable.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{GaussianRational, Observable, QCMonomial};

fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` as a multiplicative factor: fractions are parenthesized.
fn rational_factor(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// Splits a coefficient into a leading sign and an optional factor text
/// (`None` for a unit that can be left implicit).
fn coefficient_parts(c: &GaussianRational) -> (bool, Option<String>) {
    if c.is_real() {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        let text = if mag.is_one() { None } else { Some(rational_factor(&mag)) };
        (neg, text)
    } else if c.is_imaginary() {
        let neg = c.im.is_negative();
        let mag = c.im.abs();
        let text = if mag.is_one() { "i".to_string() } else { format!("{}*i", rational_factor(&mag)) };
        (neg, Some(text))
    } else {
        let im_mag = c.im.abs();
        let im_text = if im_mag.is_one() { "i".to_string() } else { format!("{}*i", rational_factor(&im_mag)) };
        let sep = if c.im.is_negative() { " - " } else { " + " };
        (false, Some(format!("({}{sep}{im_text})", rational_text(&c.re))))
    }
}

fn summand(m: &QCMonomial, hbar_degree: u32, c: &GaussianRational) -> (bool, String) {
    if hbar_degree == 0 && *m == QCMonomial::ONE && c.is_real() {
        return (c.re.is_negative(), rational_text(&c.re.abs()));
    }
    let (neg, coeff) = coefficient_parts(c);
    let mut factors: Vec<String> = coeff.into_iter().collect();
    match hbar_degree {
        0 => {}
        1 => factors.push("hbar".into()),
        d => factors.push(format!("hbar^{d}")),
    }
    if *m != QCMonomial::ONE {
        factors.push(m.to_string());
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    (neg, factors.join("*"))
}

/// Canonical text of `a`; zero prints as `0`.
pub fn format(a: &Observable) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, series) in a.display_terms() {
        for (d, c) in series.iter() {
            let (neg, text) = summand(m, d, c);
            match (out.is_empty(), neg) {
                (true, false) => {}
                (true, true) => out.push('-'),
                (false, false) => out.push_str(" + "),
                (false, true) => out.push_str(" - "),
            }
            out.push_str(&text);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse;

    fn canon(s: &str) -> String {
        format(&parse(s).unwrap())
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canon("p*q"), "q*p - i*hbar");
        assert_eq!(canon("q*p"), "q*p");
        assert_eq!(format(&Observable::zero()), "0");
        assert_eq!(canon("1"), "1");
        assert_eq!(canon("-1"), "-1");
        assert_eq!(canon("1/8"), "1/8");
        assert_eq!(canon("x - 1/8"), "x - 1/8");
        assert_eq!(canon("hbar^2*1/2"), "(1/2)*hbar^2");
    }

    #[test]
    fn coefficients() {
        assert_eq!(canon("(1/2)*hbar^2"), "(1/2)*hbar^2");
        assert_eq!(canon("-2*i*hbar"), "-2*i*hbar");
        assert_eq!(canon("(1 + 2*i)*q"), "(1 + 2*i)*q");
        assert_eq!(canon("(-1/2 - (3/4)*i)*x*p"), "(-1/2 - (3/4)*i)*x*p");
        assert_eq!(canon("-i"), "-i");
        assert_eq!(canon("(2/3)*i*k"), "(2/3)*i*k");
    }

    #[test]
    fn term_order() {
        assert_eq!(canon("q*p + x*k"), "x*k + q*p");
        assert_eq!(canon("1 + p + q + k + x"), "x + k + q + p + 1");
        assert_eq!(canon("hbar*q*p + q*p"), "q*p + hbar*q*p");
        assert_eq!(canon("-4*i*hbar*q*p + q^2*p^2 - 2*hbar^2"), "q^2*p^2 - 4*i*hbar*q*p - 2*hbar^2");
    }
}
