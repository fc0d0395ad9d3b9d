//! Exhaustive and randomized searches for identity violations.
//!
//! Every bracket is bilinear, so any violation among polynomial observables
//! shows up on some triple of monomials with unit coefficients. Exhaustive
//! scans therefore only enumerate monomial triples.

mod random;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Observable, QCMonomial};
use crate::brackets::{axiom_residuals, jacobi_residual, leibniz_residual, BracketKind, ResidualReport};
use crate::error::{Error, Result};

pub use random::{
    random_coefficient, random_observable, random_observable_with, random_sector_observable,
    COEFF_BOUND, MAX_HBAR_DEGREE,
};

/// Maximum degree used when a caller does not pick one.
pub const DEFAULT_MAX_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Jacobi,
    Leibniz,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Jacobi => "jacobi",
            Identity::Leibniz => "leibniz",
        })
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "jacobi" => Ok(Identity::Jacobi),
            "leibniz" => Ok(Identity::Leibniz),
            other => Err(format!("unknown identity `{other}` (expected jacobi or leibniz)")),
        }
    }
}

/// Which monomials a scan or random draw may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    #[default]
    All,
    /// Only `x` and `k`.
    Classical,
    /// Only `q` and `p`.
    Quantum,
}

impl Sector {
    pub fn contains(self, m: &QCMonomial) -> bool {
        match self {
            Sector::All => true,
            Sector::Classical => m.is_classical(),
            Sector::Quantum => m.is_quantum(),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::All => "all",
            Sector::Classical => "classical",
            Sector::Quantum => "quantum",
        })
    }
}

impl FromStr for Sector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" | "mixed" => Ok(Sector::All),
            "classical" => Ok(Sector::Classical),
            "quantum" => Ok(Sector::Quantum),
            other => Err(format!("unknown sector `{other}` (expected all, classical or quantum)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub kind: BracketKind,
    pub max_degree: u32,
    pub identity: Identity,
    /// Whether the unit monomial `1` takes part in the enumeration.
    pub include_zero: bool,
    /// Unused by exhaustive scans; kept so a config fully describes a run.
    pub seed: u64,
    pub sector: Sector,
}

impl ScanConfig {
    pub fn new(identity: Identity, kind: BracketKind, max_degree: u32) -> Self {
        Self {
            kind,
            max_degree,
            identity,
            include_zero: false,
            seed: 0,
            sector: Sector::All,
        }
    }

    pub fn with_sector(mut self, sector: Sector) -> Self {
        self.sector = sector;
        self
    }

    pub fn with_include_zero(mut self, include_zero: bool) -> Self {
        self.include_zero = include_zero;
        self
    }
}

/// A monomial triple with nonzero identity residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationRecord {
    pub triple: [QCMonomial; 3],
    pub residual: Observable,
    pub residual_min_hbar_degree: u32,
}

impl ViolationRecord {
    pub fn total_degree(&self) -> u32 {
        self.triple.iter().map(QCMonomial::degree).sum()
    }

    /// Recomputes the residual from scratch and compares.
    pub fn verify(&self, kind: BracketKind, identity: Identity) -> Result<bool> {
        let [a, b, c] = self.triple.map(Observable::monomial);
        let report = residual(identity, kind, &a, &b, &c)?;
        Ok(report.residual == self.residual)
    }

    /// The residual this record implies for `triple` taken in the given
    /// order, if `triple` is a permutation of the stored one. Valid for the
    /// Jacobi identity only: cyclic shifts keep the sign, transpositions flip
    /// it.
    pub fn jacobi_residual_for(&self, triple: [QCMonomial; 3]) -> Option<Observable> {
        let [a, b, c] = self.triple;
        let even = [[a, b, c], [b, c, a], [c, a, b]];
        let odd = [[b, a, c], [a, c, b], [c, b, a]];
        if even.contains(&triple) {
            Some(self.residual.clone())
        } else if odd.contains(&triple) {
            Some(-&self.residual)
        } else {
            None
        }
    }
}

/// All monomials of total degree at most `max_degree`: grade ascending, then
/// `x, k, q, p` exponents lexicographically with the larger exponent first.
pub fn enumerate_monomials(max_degree: u32) -> Vec<QCMonomial> {
    let mut out = Vec::new();
    for grade in 0..=max_degree {
        for x in (0..=grade).rev() {
            for k in (0..=grade - x).rev() {
                for q in (0..=grade - x - k).rev() {
                    out.push(QCMonomial::new(x, k, q, grade - x - k - q));
                }
            }
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

pub(crate) fn enumerate_sector(max_degree: u32, sector: Sector, include_one: bool) -> Vec<QCMonomial> {
    enumerate_monomials(max_degree)
        .into_iter()
        .filter(|m| sector.contains(m) && (include_one || *m != QCMonomial::ONE))
        .collect()
}

fn residual(
    identity: Identity,
    kind: BracketKind,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<ResidualReport> {
    match identity {
        Identity::Jacobi => jacobi_residual(kind, a, b, c),
        Identity::Leibniz => leibniz_residual(kind, a, b, c),
    }
}

/// How a scan distributes its work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon; `None` uses the global pool.
    #[cfg(feature = "parallel")]
    Parallel { jobs: Option<usize> },
}

#[allow(clippy::derivable_impls)]
impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel { jobs: None }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `jobs == Some(1)` or a build without the `parallel` feature runs sequentially.
    pub fn with_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Sequential,
            #[cfg(feature = "parallel")]
            jobs => Execution::Parallel { jobs },
            #[cfg(not(feature = "parallel"))]
            _ => Execution::Sequential,
        }
    }

    fn map<T, U, F>(self, items: &[T], f: F) -> Result<Vec<U>>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Execution::Sequential => Ok(items.iter().map(f).collect()),
            #[cfg(feature = "parallel")]
            Execution::Parallel { jobs: None } => Ok(items.par_iter().map(f).collect()),
            #[cfg(feature = "parallel")]
            Execution::Parallel { jobs: Some(n) } => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
                Ok(pool.install(|| items.par_iter().map(f).collect()))
            }
        }
    }
}

/// Index triples to evaluate. Jacobi triples are canonicalized to
/// `i <= j <= l`; Leibniz triples are all ordered triples.
fn index_triples(n: usize, identity: Identity, canonical: bool) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if canonical && identity == Identity::Jacobi && !(i <= j && j <= l) {
                    continue;
                }
                out.push([i, j, l]);
            }
        }
    }
    out
}

/// Exhaustive scan with the default execution strategy.
pub fn scan(config: &ScanConfig) -> Result<Vec<ViolationRecord>> {
    scan_with(config, Execution::default())
}

pub fn scan_with(config: &ScanConfig, exec: Execution) -> Result<Vec<ViolationRecord>> {
    run_scan(config, exec, true)
}

/// Scan every ordered triple, without symmetry canonicalization.
pub fn scan_all_orderings(config: &ScanConfig, exec: Execution) -> Result<Vec<ViolationRecord>> {
    run_scan(config, exec, false)
}

fn run_scan(config: &ScanConfig, exec: Execution, canonical: bool) -> Result<Vec<ViolationRecord>> {
    let basis = enumerate_sector(config.max_degree, config.sector, config.include_zero);
    let observables: Vec<Observable> = basis.iter().copied().map(Observable::monomial).collect();
    let triples = index_triples(basis.len(), config.identity, canonical);

    let evaluated = exec.map(&triples, |&[i, j, l]| -> Result<Option<ViolationRecord>> {
        let report = residual(
            config.identity,
            config.kind,
            &observables[i],
            &observables[j],
            &observables[l],
        )?;
        if report.is_zero {
            return Ok(None);
        }
        let triple = [basis[i], basis[j], basis[l]];
        let min = report.residual.min_hbar_degree().unwrap_or(0);
        if min < 1 {
            return Err(Error::Internal(format!(
                "hbar-free {} residual {} for {triple:?}",
                config.identity,
                report.residual
            )));
        }
        Ok(Some(ViolationRecord {
            triple,
            residual: report.residual,
            residual_min_hbar_degree: min,
        }))
    })?;

    let mut records = Vec::new();
    for (idx, item) in triples.iter().zip(evaluated) {
        if let Some(record) = item? {
            records.push((*idx, record));
        }
    }
    records.sort_by_key(|(idx, r)| (r.total_degree(), *idx));
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// Degree cap for the random sector-pure factors in [`axiom_sweep`].
pub const AXIOM_MAX_DEGREE: u32 = 3;
const AXIOM_MAX_TERMS: usize = 3;

/// Draws `samples` sector-pure quadruples `(C, Q, C', Q')` and returns every
/// nonzero axiom residual.
pub fn axiom_sweep(kind: BracketKind, samples: usize, seed: u64) -> Result<Vec<ResidualReport>> {
    axiom_sweep_with(kind, samples, seed, Execution::default())
}

pub fn axiom_sweep_with(
    kind: BracketKind,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ResidualReport>> {
    let indices: Vec<u64> = (0..samples as u64).collect();
    let evaluated = exec.map(&indices, |&n| -> Result<Vec<ResidualReport>> {
        let [c, q, c2, q2] = axiom_sample(seed, n);
        let (first, second) = axiom_residuals(kind, &c, &q, &c2, &q2)?;
        Ok([first, second].into_iter().filter(|r| !r.is_zero).collect())
    })?;
    let mut out = Vec::new();
    for reports in evaluated {
        out.extend(reports?);
    }
    Ok(out)
}

/// The `n`-th sweep quadruple for `seed`; each sample uses its own ChaCha stream.
pub fn axiom_sample(seed: u64, n: u64) -> [Observable; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n);
    let mut draw = |sector| random_observable_with(&mut rng, sector, AXIOM_MAX_DEGREE, AXIOM_MAX_TERMS);
    let c = draw(Sector::Classical);
    let q = draw(Sector::Quantum);
    let c2 = draw(Sector::Classical);
    let q2 = draw(Sector::Quantum);
    [c, q, c2, q2]
}
