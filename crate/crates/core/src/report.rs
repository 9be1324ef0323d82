//! Flat, machine-readable verification records and their JSON/CSV encodings.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    ExactPass,
    FloatPass,
    Fail,
}

impl Outcome {
    pub fn passed(self) -> bool {
        self != Outcome::Fail
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::ExactPass => "exact_pass",
            Outcome::FloatPass => "float_pass",
            Outcome::Fail => "fail",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One verification result. Exact records carry rationals as `p/q` strings and
/// tolerance `"exact"`; float records carry the shortest round-trip decimal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub suite: String,
    pub target: String,
    /// `name=value;name=value`
    pub params: String,
    /// `lo..=hi`, or `-` for checks not indexed by degree.
    pub degrees: String,
    pub outcome: Outcome,
    pub residual: String,
    pub tolerance: String,
    pub millis: u64,
}

impl VerificationRecord {
    /// Passes only when `residual` is literally zero.
    pub fn exact(
        suite: &str,
        target: &str,
        params: String,
        degrees: String,
        residual: &Rational,
    ) -> Self {
        VerificationRecord {
            suite: suite.to_string(),
            target: target.to_string(),
            params,
            degrees,
            outcome: if residual.is_zero() { Outcome::ExactPass } else { Outcome::Fail },
            residual: format_rational(residual),
            tolerance: "exact".to_string(),
            millis: 0,
        }
    }

    /// Passes when `residual <= tolerance`; NaN always fails.
    pub fn float(
        suite: &str,
        target: &str,
        params: String,
        degrees: String,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        VerificationRecord {
            suite: suite.to_string(),
            target: target.to_string(),
            params,
            degrees,
            outcome: if residual <= tolerance { Outcome::FloatPass } else { Outcome::Fail },
            residual: format!("{residual:e}"),
            tolerance: format!("{tolerance:e}"),
            millis: 0,
        }
    }

    /// A pass/fail judgement with no numeric residual, such as "error was raised".
    pub fn check(suite: &str, target: &str, params: String, degrees: String, ok: bool, detail: &str) -> Self {
        VerificationRecord {
            suite: suite.to_string(),
            target: target.to_string(),
            params,
            degrees,
            outcome: if ok { Outcome::ExactPass } else { Outcome::Fail },
            residual: if ok { "0".to_string() } else { detail.to_string() },
            tolerance: "exact".to_string(),
            millis: 0,
        }
    }

    pub fn with_millis(mut self, millis: u64) -> Self {
        self.millis = millis;
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }
}

/// `name=value;...` with rationals in canonical `p/q` form.
pub fn format_params<'a>(params: impl IntoIterator<Item = (&'a str, &'a Rational)>) -> String {
    params
        .into_iter()
        .map(|(k, v)| format!("{k}={}", format_rational(v)))
        .collect::<Vec<_>>()
        .join(";")
}

/// `lo..=hi`
pub fn degree_range(lo: usize, hi: usize) -> String {
    format!("{lo}..={hi}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Serialization(format!("unknown format {s:?}"))),
        }
    }
}

fn ser_err(e: impl fmt::Display) -> Error {
    Error::Serialization(e.to_string())
}

/// JSON: an array of flat objects. CSV: a header row plus one row per record.
pub fn emit(records: &[VerificationRecord], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => serde_json::to_vec_pretty(records).map_err(ser_err),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if records.is_empty() {
                w.write_record(FIELDS).map_err(ser_err)?;
            }
            for r in records {
                w.serialize(r).map_err(ser_err)?;
            }
            w.into_inner().map_err(ser_err)
        }
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Vec<VerificationRecord>> {
    match format {
        Format::Json => serde_json::from_slice(bytes).map_err(ser_err),
        Format::Csv => csv::Reader::from_reader(bytes)
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(ser_err),
    }
}

pub const FIELDS: [&str; 8] = [
    "suite", "target", "params", "degrees", "outcome", "residual", "tolerance", "millis",
];

pub fn first_failure(records: &[VerificationRecord]) -> Option<&VerificationRecord> {
    records.iter().find(|r| !r.passed())
}
