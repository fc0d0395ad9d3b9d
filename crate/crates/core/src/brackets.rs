//! Dynamical brackets between observables and the residuals of the
//! identities they are expected to satisfy.
//!
//! Four brackets are provided:
//!
//! * `poisson`: `{A,B} = dxA dkB - dkA dxB` with operator products taken in
//!   the written order.
//! * `commutator`: `[A,B] / (i hbar)`.
//! * `aleksandrov`: the commutator plus the symmetrized Poisson part
//!   `({A,B} - {B,A}) / 2`.
//! * `normal`: the commutator plus a classical part that takes the Poisson
//!   bracket of the `(x,k)` coefficient functions and concatenates the
//!   quantum words without reordering.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, HbarSeries, Observable, QCMonomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketKind {
    Poisson,
    Commutator,
    Aleksandrov,
    NormalOrder,
}

impl BracketKind {
    pub const ALL: [BracketKind; 4] = [
        BracketKind::Poisson,
        BracketKind::Commutator,
        BracketKind::Aleksandrov,
        BracketKind::NormalOrder,
    ];

    /// The two quantum-classical brackets.
    pub const MIXED: [BracketKind; 2] = [BracketKind::Aleksandrov, BracketKind::NormalOrder];

    pub fn name(self) -> &'static str {
        match self {
            BracketKind::Poisson => "poisson",
            BracketKind::Commutator => "commutator",
            BracketKind::Aleksandrov => "aleksandrov",
            BracketKind::NormalOrder => "normal",
        }
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, BracketKind::Aleksandrov | BracketKind::NormalOrder)
    }
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown bracket kind `{0}` (expected poisson, commutator, aleksandrov or normal)")]
pub struct UnknownKind(pub String);

impl FromStr for BracketKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "poisson" => Ok(BracketKind::Poisson),
            "commutator" => Ok(BracketKind::Commutator),
            "aleksandrov" => Ok(BracketKind::Aleksandrov),
            "normal" | "normal-order" | "normal_order" => Ok(BracketKind::NormalOrder),
            other => Err(UnknownKind(other.to_string())),
        }
    }
}

/// An identity residual together with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub inputs: Vec<Observable>,
    pub kind: BracketKind,
    pub residual: Observable,
    pub is_zero: bool,
}

impl ResidualReport {
    pub fn new(kind: BracketKind, inputs: Vec<Observable>, residual: Observable) -> Self {
        let is_zero = residual.is_zero();
        Self { inputs, kind, residual, is_zero }
    }
}

fn half() -> HbarSeries {
    HbarSeries::constant(GaussianRational::from_fractions(1, 2, 0, 1))
}

/// `[A,B] / (i hbar)`.
pub fn quantum_bracket(a: &Observable, b: &Observable) -> Result<Observable> {
    // hbar-free parts of products commute, so this never fails for
    // polynomial observables.
    a.commutator(b).divide_by_i_hbar()
}

/// `dxA dkB - dkA dxB`, operator products in the written order.
pub fn ordered_poisson(a: &Observable, b: &Observable) -> Observable {
    &a.partial_x().mul(&b.partial_k()) - &a.partial_k().mul(&b.partial_x())
}

/// `[A,B]/(i hbar) + ({A,B} - {B,A}) / 2`.
pub fn aleksandrov_bracket(a: &Observable, b: &Observable) -> Result<Observable> {
    let quantum = quantum_bracket(a, b)?;
    let classical = (&ordered_poisson(a, b) - &ordered_poisson(b, a)).scale(&half());
    Ok(&quantum + &classical)
}

/// Classical part of the normal-ordered bracket.
///
/// Writing `A = sum a_nm(x,k) q^n p^m` and `B = sum b_rt(x,k) q^r p^t`, this is
/// `sum {a_nm, b_rt} q^(n+r) p^(m+t)`. No reordering happens, so no hbar is
/// generated; hbar in the coefficients is a constant for the derivatives.
pub fn normal_bracket_classical(a: &Observable, b: &Observable) -> Observable {
    let mut terms = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            // {x^a k^b, x^c k^d} = (a d - b c) x^(a+c-1) k^(b+d-1)
            let weight = i64::from(ma.x) * i64::from(mb.k) - i64::from(ma.k) * i64::from(mb.x);
            if weight == 0 {
                continue;
            }
            let m = QCMonomial::new(
                ma.x + mb.x - 1,
                ma.k + mb.k - 1,
                ma.q + mb.q,
                ma.p + mb.p,
            );
            terms.push((m, (ca * cb).scale(&GaussianRational::from(weight))));
        }
    }
    Observable::from_terms(terms)
}

/// `[A,B]/(i hbar)` plus the normal-ordered classical part.
pub fn normal_bracket(a: &Observable, b: &Observable) -> Result<Observable> {
    Ok(&quantum_bracket(a, b)? + &normal_bracket_classical(a, b))
}

pub fn bracket(kind: BracketKind, a: &Observable, b: &Observable) -> Result<Observable> {
    match kind {
        BracketKind::Poisson => Ok(ordered_poisson(a, b)),
        BracketKind::Commutator => quantum_bracket(a, b),
        BracketKind::Aleksandrov => aleksandrov_bracket(a, b),
        BracketKind::NormalOrder => normal_bracket(a, b),
    }
}

/// `((A,B),C) + ((B,C),A) + ((C,A),B)`.
pub fn jacobi_residual(
    kind: BracketKind,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<ResidualReport> {
    let br = |u: &Observable, v: &Observable| bracket(kind, u, v);
    let residual = &(&br(&br(a, b)?, c)? + &br(&br(b, c)?, a)?) + &br(&br(c, a)?, b)?;
    Ok(ResidualReport::new(kind, vec![a.clone(), b.clone(), c.clone()], residual))
}

/// `(AB,C) - (A,C)B - A(B,C)`, products in the written order.
pub fn leibniz_residual(
    kind: BracketKind,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<ResidualReport> {
    let lhs = bracket(kind, &a.mul(b), c)?;
    let right = bracket(kind, a, c)?.mul(b);
    let left = a.mul(&bracket(kind, b, c)?);
    let residual = &(&lhs - &right) - &left;
    Ok(ResidualReport::new(kind, vec![a.clone(), b.clone(), c.clone()], residual))
}

fn require_classical(role: &'static str, o: &Observable) -> Result<()> {
    if o.is_classical() {
        Ok(())
    } else {
        Err(Error::InvalidSector { role, expected: "classical", found: o.to_string() })
    }
}

fn require_quantum(role: &'static str, o: &Observable) -> Result<()> {
    if o.is_quantum() {
        Ok(())
    } else {
        Err(Error::InvalidSector { role, expected: "quantum", found: o.to_string() })
    }
}

/// Residuals of the two sector-factorization axioms
/// `(CQ, C') = {C,C'} Q` and `(CQ, Q') = [Q,Q'] C / (i hbar)`.
pub fn axiom_residuals(
    kind: BracketKind,
    c: &Observable,
    q: &Observable,
    c2: &Observable,
    q2: &Observable,
) -> Result<(ResidualReport, ResidualReport)> {
    require_classical("C", c)?;
    require_quantum("Q", q)?;
    require_classical("C'", c2)?;
    require_quantum("Q'", q2)?;

    let cq = c.mul(q);
    let first = &bracket(kind, &cq, c2)? - &ordered_poisson(c, c2).mul(q);
    let second = &bracket(kind, &cq, q2)? - &quantum_bracket(q, q2)?.mul(c);
    let inputs = vec![c.clone(), q.clone(), c2.clone(), q2.clone()];
    Ok((
        ResidualReport::new(kind, inputs.clone(), first),
        ResidualReport::new(kind, inputs, second),
    ))
}

/// `bracket(A,B)|_{hbar=0} - {A|_0, B|_0}_symbol`.
///
/// For the pure kinds the inputs must lie in the matching sector: quantum
/// only for `commutator`, classical only for `poisson`.
pub fn classical_limit_residual(
    kind: BracketKind,
    a: &Observable,
    b: &Observable,
) -> Result<ResidualReport> {
    match kind {
        BracketKind::Commutator => {
            require_quantum("A", a)?;
            require_quantum("B", b)?;
        }
        BracketKind::Poisson => {
            require_classical("A", a)?;
            require_classical("B", b)?;
        }
        _ => {}
    }
    let limit = bracket(kind, a, b)?.hbar_zero();
    let oracle = a.hbar_zero().symbol_poisson(&b.hbar_zero());
    Ok(ResidualReport::new(kind, vec![a.clone(), b.clone()], &limit - &oracle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs(s: &str) -> Observable {
        crate::cli::parse(s).unwrap()
    }

    #[test]
    fn kind_names() {
        for kind in BracketKind::ALL {
            assert_eq!(kind.name().parse::<BracketKind>().unwrap(), kind);
        }
        assert_eq!("normal-order".parse::<BracketKind>().unwrap(), BracketKind::NormalOrder);
        assert!("moyal".parse::<BracketKind>().is_err());
    }

    #[test]
    fn quantum_bracket_examples() {
        assert_eq!(quantum_bracket(&obs("q"), &obs("p")).unwrap(), Observable::one());
        assert!(quantum_bracket(&obs("x"), &obs("p")).unwrap().is_zero());
        assert_eq!(
            quantum_bracket(&obs("q^2"), &obs("p^2")).unwrap(),
            obs("4*q*p - 2*i*hbar")
        );
    }

    #[test]
    fn ordered_poisson_examples() {
        assert_eq!(ordered_poisson(&obs("x"), &obs("k")), Observable::one());
        assert_eq!(ordered_poisson(&obs("x*q"), &obs("k")), obs("q"));
        assert!(ordered_poisson(&obs("q"), &obs("p")).is_zero());
    }

    #[test]
    fn aleksandrov_examples() {
        assert_eq!(aleksandrov_bracket(&obs("x*q"), &obs("k")).unwrap(), obs("q"));
        let a = obs("x*q*p + k^2 - hbar*p");
        assert!(aleksandrov_bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn normal_classical_examples() {
        assert_eq!(normal_bracket_classical(&obs("k*p"), &obs("x*p")), obs("-p^2"));
        assert!(normal_bracket_classical(&obs("q"), &obs("p")).is_zero());
        assert_eq!(normal_bracket_classical(&obs("x*q"), &obs("k")), obs("q"));
    }

    #[test]
    fn normal_bracket_intermediates() {
        let nb = |a: &str, b: &str| normal_bracket(&obs(a), &obs(b)).unwrap();
        assert_eq!(nb("k*p", "x*p"), obs("-p^2"));
        assert_eq!(nb("x*p", "q^2"), obs("-2*x*q"));
        assert_eq!(nb("q^2", "k*p"), obs("2*k*q"));
        assert_eq!(nb("-p^2", "q^2"), obs("4*q*p - 2*i*hbar"));
    }

    #[test]
    fn dispatch() {
        assert_eq!(bracket(BracketKind::Commutator, &obs("q"), &obs("p")).unwrap(), Observable::one());
        assert_eq!(bracket(BracketKind::Poisson, &obs("x"), &obs("k")).unwrap(), Observable::one());
        assert_eq!(
            bracket(BracketKind::NormalOrder, &obs("k*p"), &obs("x*p")).unwrap(),
            obs("-p^2")
        );
    }

    #[test]
    fn jacobi_examples() {
        let r = jacobi_residual(BracketKind::Aleksandrov, &obs("x*q"), &obs("x*q*p"), &obs("k^2*p"))
            .unwrap();
        assert_eq!(r.residual, obs("(1/2)*hbar^2"));
        assert!(!r.is_zero);
        let r = jacobi_residual(BracketKind::NormalOrder, &obs("k*p"), &obs("x*p"), &obs("q^2"))
            .unwrap();
        assert_eq!(r.residual, obs("-2*i*hbar"));
        let r = jacobi_residual(BracketKind::NormalOrder, &obs("x*q"), &obs("x*q*p"), &obs("k^2*p"))
            .unwrap();
        assert!(r.is_zero);
        let r = jacobi_residual(BracketKind::Aleksandrov, &obs("k*p"), &obs("x*p"), &obs("q^2"))
            .unwrap();
        assert!(r.is_zero);
        for kind in [BracketKind::Commutator, BracketKind::Aleksandrov, BracketKind::NormalOrder] {
            let a = obs("x*q*p + k");
            let b = obs("k^2*p - q");
            assert!(jacobi_residual(kind, &a, &a, &b).unwrap().is_zero);
        }
        let (a, b) = (obs("x^2*k + k"), obs("x*k^3 - x"));
        assert!(jacobi_residual(BracketKind::Poisson, &a, &a, &b).unwrap().is_zero);
    }

    #[test]
    fn ordered_poisson_is_not_antisymmetric_on_operators() {
        let (a, b) = (obs("x*p"), obs("k*q"));
        assert!(!(&ordered_poisson(&a, &b) + &ordered_poisson(&b, &a)).is_zero());
    }

    #[test]
    fn leibniz_pure_sectors() {
        let (a, b, c) = (obs("q^2*p"), obs("p + q"), obs("q*p^2"));
        assert!(leibniz_residual(BracketKind::Commutator, &a, &b, &c).unwrap().is_zero);
        let (a, b, c) = (obs("x^2*k"), obs("k + x"), obs("x*k^2"));
        assert!(leibniz_residual(BracketKind::Poisson, &a, &b, &c).unwrap().is_zero);
    }

    #[test]
    fn axioms() {
        let (first, _) =
            axiom_residuals(BracketKind::NormalOrder, &obs("x"), &obs("p"), &obs("k"), &obs("1"))
                .unwrap();
        assert!(first.is_zero);
        let (first, second) =
            axiom_residuals(BracketKind::Aleksandrov, &obs("x"), &obs("q"), &obs("k"), &obs("p"))
                .unwrap();
        assert!(first.is_zero && second.is_zero);
        // the Poisson kind ignores q, p and so cannot reduce to the commutator
        for kind in [BracketKind::Commutator, BracketKind::Aleksandrov, BracketKind::NormalOrder] {
            let (_, second) =
                axiom_residuals(kind, &Observable::one(), &obs("q^2"), &Observable::one(), &obs("p"))
                    .unwrap();
            assert!(second.is_zero, "{kind}");
        }
    }

    #[test]
    fn axioms_reject_mixed_inputs() {
        let err = axiom_residuals(BracketKind::NormalOrder, &obs("x*q"), &obs("p"), &obs("k"), &obs("q"))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSector { role: "C", .. }));
        let err = axiom_residuals(BracketKind::NormalOrder, &obs("x"), &obs("k"), &obs("k"), &obs("q"))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSector { role: "Q", .. }));
    }

    #[test]
    fn classical_limit() {
        for kind in BracketKind::MIXED {
            assert!(classical_limit_residual(kind, &obs("x*q"), &obs("k*p")).unwrap().is_zero);
        }
        assert!(
            classical_limit_residual(BracketKind::Commutator, &obs("q^2"), &obs("p^2"))
                .unwrap()
                .is_zero
        );
        assert!(classical_limit_residual(BracketKind::Commutator, &obs("x"), &obs("p")).is_err());
    }
}
