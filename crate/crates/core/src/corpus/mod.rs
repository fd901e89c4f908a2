//! The worked-example corpus: one TOML file per example, embedded in the
//! library, and a verifier that runs every declared check.
//!
//! Text fields may contain `{expr}` placeholders in the prime `p`; each
//! entry is instantiated once per listed prime.

mod template;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use template::{eval, expand};
pub use verify::{corpus_verify, full_ledger, CheckOutcome, CheckResult, CorpusReport, Windows, REPORT_SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Established results; failures make verification fail.
    Theorem,
    /// One of several alternatives the source leaves open.
    Variant,
    /// Checked for information only.
    Conjecture,
    /// A claim recorded without a model to check it against.
    NotModeled,
}

impl Status {
    pub fn gates_exit(self) -> bool {
        self == Status::Theorem
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub status: Status,
    /// Where the expected values come from.
    pub source: String,
    #[serde(default = "default_primes")]
    pub primes: Vec<u32>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// A shift asserted without a presentation (not-modeled entries).
    pub claimed_shift: Option<i64>,
    #[serde(default)]
    pub ring: Vec<RingCheck>,
    #[serde(default)]
    pub ss: Vec<SsCheck>,
    pub ledger: Option<LedgerCheck>,
    #[serde(default)]
    pub hh: Vec<HhCheck>,
}

fn default_primes() -> Vec<u32> {
    vec![2]
}

/// Checks on a single presented ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingCheck {
    pub label: String,
    pub presentation: String,
    /// Gorenstein shift, checked by the certificate and, for tensor
    /// presentations, by the structural formula.
    pub expected_shift: Option<String>,
    /// Socle degree of an Artinian ring.
    pub socle_degree: Option<String>,
    /// A presentation whose Hilbert series must agree with this one.
    pub series_of: Option<String>,
    #[serde(default = "yes")]
    pub functional_equation: bool,
    pub hom_bound: Option<String>,
    pub deg_bound: Option<String>,
    pub source: Option<String>,
}

/// A spectral-sequence schedule and the ring its `E_infinity` converges to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsCheck {
    pub label: String,
    pub q: String,
    pub s: String,
    #[serde(default)]
    pub schedule: String,
    /// Presentation of the abutment.
    pub target: String,
    pub window: String,
    pub source: Option<String>,
}

/// A ledger fragment with the shifts it must produce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerCheck {
    pub text: String,
    #[serde(default)]
    pub expect: BTreeMap<String, String>,
    pub source: Option<String>,
}

/// The duality `HH^* = Sigma^a HH_*` and the `THH` series prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HhCheck {
    pub label: String,
    pub presentation: String,
    pub shift: String,
    pub window: u32,
    /// A presentation whose Hilbert series `thh_prediction` must return.
    pub prediction: Option<String>,
    pub source: Option<String>,
}

fn yes() -> bool {
    true
}

const FILES: &[(&str, &str)] = &[
    ("thh-fp", include_str!("../../corpus/thh-fp.toml")),
    ("thh-z", include_str!("../../corpus/thh-z.toml")),
    ("thh-lu", include_str!("../../corpus/thh-lu.toml")),
    ("thh-ku-odd", include_str!("../../corpus/thh-ku-odd.toml")),
    ("thh-ku-2-zero", include_str!("../../corpus/thh-ku-2-zero.toml")),
    ("thh-ku-2-nonzero", include_str!("../../corpus/thh-ku-2-nonzero.toml")),
    ("thh-ku-residue", include_str!("../../corpus/thh-ku-residue.toml")),
    ("thh-ko", include_str!("../../corpus/thh-ko.toml")),
    ("thh-en", include_str!("../../corpus/thh-en.toml")),
    ("thh-tmf-2", include_str!("../../corpus/thh-tmf-2.toml")),
    ("thh-tmf-3", include_str!("../../corpus/thh-tmf-3.toml")),
    ("veen-double-thh", include_str!("../../corpus/veen-double-thh.toml")),
    ("double-thh-cofibre", include_str!("../../corpus/double-thh-cofibre.toml")),
    ("tame-ramification", include_str!("../../corpus/tame-ramification.toml")),
    ("polynomial-duality", include_str!("../../corpus/polynomial-duality.toml")),
];

impl CorpusEntry {
    pub fn parse(text: &str) -> Result<Self> {
        let entry: CorpusEntry = toml::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
        if entry.primes.is_empty() {
            return Err(Error::Corpus(format!("{}: no primes listed", entry.name)));
        }
        Ok(entry)
    }
}

/// Every built-in entry, sorted by name.
pub fn builtin() -> Result<Vec<CorpusEntry>> {
    let mut out = FILES
        .iter()
        .map(|(file, text)| {
            let e = CorpusEntry::parse(text).map_err(|e| Error::Corpus(format!("{file}.toml: {e}")))?;
            if e.name != *file {
                return Err(Error::Corpus(format!("{file}.toml declares name `{}`", e.name)));
            }
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[cfg(test)]
mod tests;
