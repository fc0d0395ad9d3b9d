use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::hbar::HbarSeries;
use super::monomial::QCMonomial;
use super::ordering::reorder_terms;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// A polynomial in `x, k, q, p` with hbar-series coefficients, stored in
/// normal-ordered form (`q` left of `p`).
///
/// No stored coefficient is zero, so two observables are equal exactly when
/// their term maps are equal. The empty map is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Observable {
    terms: BTreeMap<QCMonomial, HbarSeries>,
}

impl Observable {
    /// Canonical single-term observable for one of `x, k, q, p, hbar, i, one`.
    pub fn generator(name: &str) -> Result<Self> {
        Ok(match name {
            "x" => Self::monomial(QCMonomial::X),
            "k" => Self::monomial(QCMonomial::K),
            "q" => Self::monomial(QCMonomial::Q),
            "p" => Self::monomial(QCMonomial::P),
            "hbar" | "ℏ" => Self::scalar(HbarSeries::hbar()),
            "i" => Self::scalar(HbarSeries::i()),
            "one" | "1" => Self::one(),
            other => return Err(Error::UnknownGenerator(other.to_string())),
        })
    }

    /// The unit observable `1`.
    pub fn one() -> Self {
        Self::monomial(QCMonomial::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(QCMonomial::X)
    }

    pub fn k() -> Self {
        Self::monomial(QCMonomial::K)
    }

    pub fn q() -> Self {
        Self::monomial(QCMonomial::Q)
    }

    pub fn p() -> Self {
        Self::monomial(QCMonomial::P)
    }

    pub fn hbar() -> Self {
        Self::scalar(HbarSeries::hbar())
    }

    pub fn i() -> Self {
        Self::scalar(HbarSeries::i())
    }

    pub fn monomial(m: QCMonomial) -> Self {
        Self::term(m, HbarSeries::one())
    }

    pub fn term(m: QCMonomial, c: HbarSeries) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `c * 1`.
    pub fn scalar(c: HbarSeries) -> Self {
        Self::term(QCMonomial::ONE, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (QCMonomial, HbarSeries)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: QCMonomial, c: &HbarSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn add_scalar_term(&mut self, m: QCMonomial, degree: u32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        entry.add_term(degree, c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Terms in enumeration order (grade ascending).
    pub fn terms(&self) -> impl Iterator<Item = (&QCMonomial, &HbarSeries)> + '_ {
        self.terms.iter()
    }

    /// Terms in display order (grade descending, then `x > k > q > p`).
    pub fn display_terms(&self) -> Vec<(&QCMonomial, &HbarSeries)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn coeff(&self, m: &QCMonomial) -> Option<&HbarSeries> {
        self.terms.get(m)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree of a monomial in the support, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(QCMonomial::degree).max()
    }

    /// Smallest hbar-degree over all coefficients, `None` for zero.
    pub fn min_hbar_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(HbarSeries::min_degree).min()
    }

    /// True when no monomial involves `q` or `p`.
    pub fn is_classical(&self) -> bool {
        self.terms.keys().all(QCMonomial::is_classical)
    }

    /// True when no monomial involves `x` or `k`.
    pub fn is_quantum(&self) -> bool {
        self.terms.keys().all(QCMonomial::is_quantum)
    }

    /// True when no coefficient carries hbar.
    pub fn is_hbar_free(&self) -> bool {
        self.terms.values().all(|c| c.max_degree() == Some(0))
    }

    pub fn scale(&self, c: &HbarSeries) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn scale_scalar(&self, c: &GaussianRational) -> Self {
        self.scale(&HbarSeries::constant(c.clone()))
    }

    /// Operator product in normal-ordered form.
    pub fn mul(&self, other: &Observable) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let coeff = ca * cb;
                if coeff.is_zero() {
                    continue;
                }
                // x^a k^b q^c (p^d q^e) p^f
                for term in reorder_terms(ma.p, mb.q) {
                    let m = QCMonomial::new(
                        ma.x + mb.x,
                        ma.k + mb.k,
                        ma.q + term.q,
                        term.p + mb.p,
                    );
                    for (d, c) in coeff.iter() {
                        out.add_scalar_term(m, d + term.hbar_degree, &(c * &term.coeff));
                    }
                }
            }
        }
        out
    }

    /// Product of the underlying symbols as if `q` and `p` commuted.
    pub fn commutative_mul(&self, other: &Observable) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.concat(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Observable) -> Self {
        &self.mul(other) - &other.mul(self)
    }

    fn derivative(&self, pick: impl Fn(&QCMonomial) -> (u32, QCMonomial)) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, lowered) = pick(m);
            if e == 0 {
                continue;
            }
            out.add_term(lowered, &c.scale(&GaussianRational::from(i64::from(e))));
        }
        out
    }

    pub fn partial_x(&self) -> Self {
        self.derivative(|m| (m.x, QCMonomial { x: m.x.saturating_sub(1), ..*m }))
    }

    pub fn partial_k(&self) -> Self {
        self.derivative(|m| (m.k, QCMonomial { k: m.k.saturating_sub(1), ..*m }))
    }

    /// Symbol derivative in `q` (normal-ordered symbol, commutative).
    pub fn partial_q(&self) -> Self {
        self.derivative(|m| (m.q, QCMonomial { q: m.q.saturating_sub(1), ..*m }))
    }

    /// Symbol derivative in `p` (normal-ordered symbol, commutative).
    pub fn partial_p(&self) -> Self {
        self.derivative(|m| (m.p, QCMonomial { p: m.p.saturating_sub(1), ..*m }))
    }

    /// Exact division of every coefficient by `i hbar`.
    pub fn divide_by_i_hbar(&self) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let q = c.div_i_hbar().ok_or_else(|| Error::NotDivisible { term: m.to_string() })?;
            out.insert(*m, q);
        }
        Ok(Self { terms: out })
    }

    /// The hbar-free part of every coefficient.
    pub fn hbar_zero(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.at_hbar_zero())))
    }

    /// Replaces the formal `hbar` by a number.
    pub fn substitute_hbar(&self, value: &GaussianRational) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, HbarSeries::constant(c.evaluate(value)))),
        )
    }

    /// Full two-pair Poisson bracket of the symbols, `q,p` treated as
    /// commuting:
    /// `dxA dkB - dkA dxB + dqA dpB - dpA dqB`.
    pub fn symbol_poisson(&self, other: &Observable) -> Self {
        let xk = &self.partial_x().commutative_mul(&other.partial_k())
            - &self.partial_k().commutative_mul(&other.partial_x());
        let qp = &self.partial_q().commutative_mul(&other.partial_p())
            - &self.partial_p().commutative_mul(&other.partial_q());
        &xk + &qp
    }
}

impl Zero for Observable {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}


impl From<i64> for Observable {
    fn from(n: i64) -> Self {
        Self::scalar(n.into())
    }
}

impl From<GaussianRational> for Observable {
    fn from(c: GaussianRational) -> Self {
        Self::scalar(c.into())
    }
}

impl From<HbarSeries> for Observable {
    fn from(c: HbarSeries) -> Self {
        Self::scalar(c)
    }
}

impl From<QCMonomial> for Observable {
    fn from(m: QCMonomial) -> Self {
        Self::monomial(m)
    }
}

impl<'a> Add<&'a Observable> for &Observable {
    type Output = Observable;
    fn add(self, rhs: &'a Observable) -> Observable {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Observable> for &Observable {
    type Output = Observable;
    fn sub(self, rhs: &'a Observable) -> Observable {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Observable> for &Observable {
    type Output = Observable;
    fn mul(self, rhs: &'a Observable) -> Observable {
        Observable::mul(self, rhs)
    }
}

impl Neg for &Observable {
    type Output = Observable;
    fn neg(self) -> Observable {
        Observable {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Observable {
    type Output = Observable;
    fn add(self, rhs: Observable) -> Observable {
        &self + &rhs
    }
}

impl Sub for Observable {
    type Output = Observable;
    fn sub(self, rhs: Observable) -> Observable {
        &self - &rhs
    }
}

impl Neg for Observable {
    type Output = Observable;
    fn neg(self) -> Observable {
        -&self
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::format(self))
    }
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Observable({self})")
    }
}
