//! Test-only oracles that do not go through the production multiplication.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use qcbracket::explorer::enumerate_monomials;
use qcbracket::{GaussianRational, HbarSeries, Observable, QCMonomial};

/// A literal operator word over `q`/`p` with classical exponents, keyed with
/// its hbar-degree.
type WordKey = (u32, u32, String, u32);

/// Normal-orders a sum of literal words by repeatedly rewriting the leftmost
/// `pq` into `qp - i hbar`, one adjacent swap at a time.
pub fn swap_normal_order(start: BTreeMap<WordKey, GaussianRational>) -> Observable {
    let minus_i = -GaussianRational::i();
    let mut pending: Vec<(WordKey, GaussianRational)> = start.into_iter().collect();
    let mut done: BTreeMap<WordKey, GaussianRational> = BTreeMap::new();
    while let Some(((x, k, word, h), c)) = pending.pop() {
        match word.find("pq") {
            None => {
                let e = done.entry((x, k, word, h)).or_insert_with(GaussianRational::zero);
                *e = &*e + &c;
            }
            Some(at) => {
                let mut swapped = word.clone();
                swapped.replace_range(at..at + 2, "qp");
                let mut contracted = word.clone();
                contracted.replace_range(at..at + 2, "");
                pending.push(((x, k, swapped, h), c.clone()));
                pending.push(((x, k, contracted, h + 1), &c * &minus_i));
            }
        }
    }
    let mut terms = Vec::new();
    for ((x, k, word, h), c) in done {
        if c.is_zero() {
            continue;
        }
        let q = word.chars().filter(|&ch| ch == 'q').count() as u32;
        let p = word.len() as u32 - q;
        assert_eq!(word, format!("{}{}", "q".repeat(q as usize), "p".repeat(p as usize)));
        terms.push((QCMonomial::new(x, k, q, p), HbarSeries::monomial(c, h)));
    }
    Observable::from_terms(terms)
}

/// `p^t q^r` through the swap oracle.
pub fn swap_reorder(t: u32, r: u32) -> Observable {
    let word = format!("{}{}", "p".repeat(t as usize), "q".repeat(r as usize));
    let mut start = BTreeMap::new();
    start.insert((0, 0, word, 0), GaussianRational::from(1));
    swap_normal_order(start)
}

/// `A B` by concatenating literal words and normal-ordering with swaps.
pub fn swap_product(a: &Observable, b: &Observable) -> Observable {
    let mut start: BTreeMap<WordKey, GaussianRational> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let word = format!(
                "{}{}{}{}",
                "q".repeat(ma.q as usize),
                "p".repeat(ma.p as usize),
                "q".repeat(mb.q as usize),
                "p".repeat(mb.p as usize)
            );
            for (da, va) in ca.iter() {
                for (db, vb) in cb.iter() {
                    let key = (ma.x + mb.x, ma.k + mb.k, word.clone(), da + db);
                    let e = start.entry(key).or_insert_with(GaussianRational::zero);
                    *e = &*e + &(va * vb);
                }
            }
        }
    }
    swap_normal_order(start)
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Small nonzero Gaussian rationals.
pub fn arb_scalar() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9)
        .prop_filter("nonzero", |(a, _, c, _)| *a != 0 || *c != 0)
        .prop_map(|(a, b, c, d)| GaussianRational::from_fractions(a, b, c, d))
}

fn arb_observable_from(basis: Vec<QCMonomial>, max_terms: usize) -> impl Strategy<Value = Observable> {
    let n = basis.len();
    prop::collection::vec((0..n, arb_scalar(), 0u32..=2), 1..=max_terms).prop_map(move |terms| {
        Observable::from_terms(
            terms
                .into_iter()
                .map(|(i, c, h)| (basis[i], HbarSeries::monomial(c, h))),
        )
    })
}

/// Random observables with every monomial of degree at most `max_degree`.
pub fn arb_observable(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Observable> {
    arb_observable_from(enumerate_monomials(max_degree), max_terms)
}

pub fn arb_classical(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Observable> {
    arb_observable_from(
        enumerate_monomials(max_degree).into_iter().filter(QCMonomial::is_classical).collect(),
        max_terms,
    )
}

pub fn arb_quantum(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Observable> {
    arb_observable_from(
        enumerate_monomials(max_degree).into_iter().filter(QCMonomial::is_quantum).collect(),
        max_terms,
    )
}

/// hbar-free observables.
pub fn arb_hbar_free(max_degree: u32, max_terms: usize) -> impl Strategy<Value = Observable> {
    arb_observable(max_degree, max_terms).prop_map(|o| o.hbar_zero())
}
