//! JSON documents emitted by the CLI.
//!
//! An observable is written as
//!
//! ```json
//! {"schema":1,"canonical_text":"q*p - i*hbar",
//!  "terms":[{"exp":[0,0,1,1],"coeff":[{"hbar":0,"re":[1,1],"im":[0,1]}]},
//!           {"exp":[0,0,0,0],"coeff":[{"hbar":1,"re":[0,1],"im":[-1,1]}]}]}
//! ```
//!
//! Terms follow the canonical text order. Integers are emitted with full
//! precision.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::format;
use crate::algebra::{GaussianRational, HbarSeries, Observable, QCMonomial};
use crate::explorer::ViolationRecord;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("invalid document: {0}")]
    Invalid(String),
}

/// An arbitrary-precision integer carried as a plain JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {n}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub hbar: u32,
    pub re: [JsonInt; 2],
    pub im: [JsonInt; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: [u32; 4],
    pub coeff: Vec<CoeffRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: u32,
    pub canonical_text: String,
    pub terms: Vec<TermRecord>,
}

fn ratio_pair(r: &BigRational) -> [JsonInt; 2] {
    [JsonInt(r.numer().clone()), JsonInt(r.denom().clone())]
}

fn pair_ratio(pair: &[JsonInt; 2]) -> Result<BigRational, JsonError> {
    if pair[1].0.is_zero() {
        return Err(JsonError::Invalid("zero denominator".into()));
    }
    Ok(BigRational::new(pair[0].0.clone(), pair[1].0.clone()))
}

impl OutputRecord {
    pub fn from_observable(a: &Observable) -> Self {
        let terms = a
            .display_terms()
            .into_iter()
            .map(|(m, series)| TermRecord {
                exp: m.exponents(),
                coeff: series
                    .iter()
                    .map(|(d, c)| CoeffRecord { hbar: d, re: ratio_pair(&c.re), im: ratio_pair(&c.im) })
                    .collect(),
            })
            .collect();
        Self { schema: SCHEMA_VERSION, canonical_text: format(a), terms }
    }

    /// Rebuilds the observable from the term table; `canonical_text` is not consulted.
    pub fn to_observable(&self) -> Result<Observable, JsonError> {
        if self.schema != SCHEMA_VERSION {
            return Err(JsonError::Schema(self.schema));
        }
        let mut out = Observable::zero();
        for term in &self.terms {
            let mut series = HbarSeries::zero();
            for c in &term.coeff {
                series.add_term(c.hbar, &GaussianRational::new(pair_ratio(&c.re)?, pair_ratio(&c.im)?));
            }
            out = &out + &Observable::term(QCMonomial::from_exponents(term.exp), series);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub triple: [[u32; 4]; 3],
    pub triple_text: [String; 3],
    pub residual: OutputRecord,
    pub residual_min_hbar_degree: u32,
}

impl From<&ViolationRecord> for ViolationJson {
    fn from(r: &ViolationRecord) -> Self {
        Self {
            triple: r.triple.map(|m| m.exponents()),
            triple_text: r.triple.map(|m| m.to_string()),
            residual: OutputRecord::from_observable(&r.residual),
            residual_min_hbar_degree: r.residual_min_hbar_degree,
        }
    }
}

impl ViolationJson {
    pub fn to_record(&self) -> Result<ViolationRecord, JsonError> {
        Ok(ViolationRecord {
            triple: self.triple.map(QCMonomial::from_exponents),
            residual: self.residual.to_observable()?,
            residual_min_hbar_degree: self.residual_min_hbar_degree,
        })
    }
}

pub fn observable_to_json(a: &Observable) -> String {
    serde_json::to_string(&OutputRecord::from_observable(a)).expect("OutputRecord serializes")
}

pub fn observable_from_json(s: &str) -> Result<Observable, JsonError> {
    serde_json::from_str::<OutputRecord>(s)?.to_observable()
}

pub fn violations_to_json(records: &[ViolationRecord]) -> String {
    let docs: Vec<ViolationJson> = records.iter().map(ViolationJson::from).collect();
    serde_json::to_string(&docs).expect("violations serialize")
}

pub fn violations_from_json(s: &str) -> Result<Vec<ViolationRecord>, JsonError> {
    serde_json::from_str::<Vec<ViolationJson>>(s)?
        .iter()
        .map(ViolationJson::to_record)
        .collect()
}
