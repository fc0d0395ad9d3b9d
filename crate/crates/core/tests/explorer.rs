use std::collections::BTreeMap;

use qcbracket::brackets::BracketKind;
use qcbracket::cli::{parse, violations_from_json, violations_to_json};
use qcbracket::explorer::{
    axiom_sweep, axiom_sweep_with, enumerate_monomials, random_observable, scan, scan_all_orderings,
    scan_with, Execution, Identity, ScanConfig, Sector,
};
use qcbracket::{Observable, QCMonomial};

fn m(x: u32, k: u32, q: u32, p: u32) -> QCMonomial {
    QCMonomial::new(x, k, q, p)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn enumeration_is_complete_and_ordered() {
    for d in 0..=6u32 {
        let v = enumerate_monomials(d);
        assert_eq!(v.len() as u64, binomial(u64::from(d) + 4, 4), "degree {d}");
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|m| m.degree() <= d));
    }
    assert_eq!(enumerate_monomials(3).len(), 35);
}

#[test]
fn normal_order_scan_finds_new_triple() {
    let records = scan(&ScanConfig::new(Identity::Jacobi, BracketKind::NormalOrder, 2)).unwrap();
    let triple = [m(0, 1, 0, 1), m(1, 0, 0, 1), m(0, 0, 2, 0)];
    let found: Vec<_> = records.iter().filter_map(|r| r.jacobi_residual_for(triple)).collect();
    assert_eq!(found, vec![parse("-2*i*hbar").unwrap()]);
}

#[test]
fn records_are_sorted_and_sound() {
    let config = ScanConfig::new(Identity::Jacobi, BracketKind::Aleksandrov, 3);
    let records = scan(&config).unwrap();
    assert!(!records.is_empty());
    assert!(records.windows(2).all(|w| w[0].total_degree() <= w[1].total_degree()));
    for r in &records {
        assert!(r.verify(config.kind, config.identity).unwrap());
        assert!(r.residual_min_hbar_degree >= 1);
        assert_eq!(Some(r.residual_min_hbar_degree), r.residual.min_hbar_degree());
    }
}

#[test]
fn output_is_independent_of_parallelism() {
    let config = ScanConfig::new(Identity::Jacobi, BracketKind::NormalOrder, 3);
    let sequential = scan_with(&config, Execution::Sequential).unwrap();
    for jobs in [None, Some(1), Some(2), Some(3)] {
        assert_eq!(scan_with(&config, Execution::with_jobs(jobs)).unwrap(), sequential, "{jobs:?}");
    }
    assert_eq!(
        axiom_sweep_with(BracketKind::Poisson, 40, 9, Execution::Sequential).unwrap(),
        axiom_sweep(BracketKind::Poisson, 40, 9).unwrap()
    );
}

fn oriented_map(records: &[qcbracket::explorer::ViolationRecord]) -> BTreeMap<[QCMonomial; 3], Observable> {
    records.iter().map(|r| (r.triple, r.residual.clone())).collect()
}

#[test]
fn canonicalization_loses_nothing() {
    for kind in BracketKind::MIXED {
        let config = ScanConfig::new(Identity::Jacobi, kind, 2);
        let canonical = scan_with(&config, Execution::Sequential).unwrap();
        let full = oriented_map(&scan_all_orderings(&config, Execution::Sequential).unwrap());

        let mut closure = BTreeMap::new();
        for r in &canonical {
            let [a, b, c] = r.triple;
            for perm in [[a, b, c], [b, c, a], [c, a, b], [b, a, c], [a, c, b], [c, b, a]] {
                closure.insert(perm, r.jacobi_residual_for(perm).unwrap());
            }
        }
        assert_eq!(closure, full, "{kind}");
    }
}

#[test]
fn pure_kinds_satisfy_leibniz_in_their_sector() {
    let quantum = ScanConfig::new(Identity::Leibniz, BracketKind::Commutator, 3).with_sector(Sector::Quantum);
    assert!(scan(&quantum).unwrap().is_empty());
    let classical = ScanConfig::new(Identity::Leibniz, BracketKind::Poisson, 3).with_sector(Sector::Classical);
    assert!(scan(&classical).unwrap().is_empty());
}

#[test]
fn unit_monomial_adds_no_violations() {
    let base = ScanConfig::new(Identity::Jacobi, BracketKind::NormalOrder, 2);
    assert_eq!(
        scan(&base).unwrap(),
        scan(&base.clone().with_include_zero(true)).unwrap()
    );
}

#[test]
fn leibniz_records_keep_written_order() {
    let config = ScanConfig::new(Identity::Leibniz, BracketKind::NormalOrder, 2);
    let records = scan(&config).unwrap();
    assert!(!records.is_empty());
    for r in records.iter().take(50) {
        assert!(r.verify(config.kind, config.identity).unwrap());
    }
}

#[test]
fn json_records_round_trip() {
    let records = scan(&ScanConfig::new(Identity::Jacobi, BracketKind::Aleksandrov, 3)).unwrap();
    let doc = violations_to_json(&records);
    let value: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert!(value.is_array());
    assert_eq!(violations_from_json(&doc).unwrap(), records);
}

#[test]
fn axiom_sweep_controls() {
    for kind in BracketKind::MIXED {
        assert!(axiom_sweep(kind, 50, 1).unwrap().is_empty(), "{kind}");
    }
    // (CQ, Q') under the Poisson kind ignores the commutator, so the second axiom fails
    assert!(!axiom_sweep(BracketKind::Poisson, 20, 1).unwrap().is_empty());
    assert!(axiom_sweep(BracketKind::NormalOrder, 0, 1).unwrap().is_empty());
}

#[test]
fn random_observables_are_reproducible() {
    let a: Vec<_> = (0..20).map(|s| random_observable(s, 3, 4)).collect();
    let b: Vec<_> = (0..20).map(|s| random_observable(s, 3, 4)).collect();
    assert_eq!(a, b);
    assert!(a.windows(2).any(|w| w[0] != w[1]));
}
