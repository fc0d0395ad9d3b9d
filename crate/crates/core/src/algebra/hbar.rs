//! Polynomials in the formal parameter hbar.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::GaussianRational;

/// A finite polynomial `sum_d c_d hbar^d` with Gaussian-rational coefficients.
///
/// No stored coefficient is zero; the empty map is the zero series.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HbarSeries {
    terms: BTreeMap<u32, GaussianRational>,
}

impl HbarSeries {
    /// `c hbar^degree`.
    pub fn monomial(c: GaussianRational, degree: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(degree, c);
        }
        Self { terms }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn hbar() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, GaussianRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (d, c) in iter {
            out.add_term(d, &c);
        }
        out
    }

    /// Adds `c hbar^degree` in place, pruning a cancelled coefficient.
    pub fn add_term(&mut self, degree: u32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&degree) {
            Some(existing) => {
                *existing = &*existing + c;
                if existing.is_zero() {
                    self.terms.remove(&degree);
                }
            }
            None => {
                self.terms.insert(degree, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &HbarSeries) {
        for (d, c) in &other.terms {
            self.add_term(*d, c);
        }
    }

    /// Terms in ascending hbar-degree.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &GaussianRational)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: u32) -> Option<&GaussianRational> {
        self.terms.get(&degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The hbar-free part.
    pub fn at_hbar_zero(&self) -> Self {
        match self.terms.get(&0) {
            Some(c) => Self::constant(c.clone()),
            None => Self::zero(),
        }
    }

    /// Division by `i hbar`; `None` if there is an hbar-free coefficient.
    pub fn div_i_hbar(&self) -> Option<Self> {
        if self.terms.contains_key(&0) {
            return None;
        }
        Some(Self {
            terms: self.terms.iter().map(|(d, c)| (d - 1, c.div_i())).collect(),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// The value of the series with `hbar` set to `value`.
    pub fn evaluate(&self, value: &GaussianRational) -> GaussianRational {
        self.terms
            .iter()
            .fold(GaussianRational::zero(), |acc, (d, c)| &acc + &(c * &value.pow(*d)))
    }

    /// Returns the single scalar if this series is a pure constant.
    pub fn as_constant(&self) -> Option<&GaussianRational> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&0),
            _ => None,
        }
    }
}

impl Zero for HbarSeries {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for HbarSeries {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl From<GaussianRational> for HbarSeries {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for HbarSeries {
    fn from(n: i64) -> Self {
        Self::constant(n.into())
    }
}

impl<'a> Add<&'a HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: &'a HbarSeries) -> HbarSeries {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn sub(self, rhs: &'a HbarSeries) -> HbarSeries {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a HbarSeries> for &HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: &'a HbarSeries) -> HbarSeries {
        let mut out = HbarSeries::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &HbarSeries {
    type Output = HbarSeries;
    fn neg(self) -> HbarSeries {
        HbarSeries {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Add for HbarSeries {
    type Output = HbarSeries;
    fn add(self, rhs: HbarSeries) -> HbarSeries {
        &self + &rhs
    }
}

impl Mul for HbarSeries {
    type Output = HbarSeries;
    fn mul(self, rhs: HbarSeries) -> HbarSeries {
        &self * &rhs
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (d, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})hbar^{d}")?;
        }
        Ok(())
    }
}
