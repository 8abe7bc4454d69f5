//! Run configuration and the machine-readable report of a suite run.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::awmod::JetRep;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Jacobi,
    Omega,
    Annihilation,
    TensorStructure,
    AwCalculus,
    JetCommutant,
    CoverRank,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Jacobi,
        Suite::Omega,
        Suite::Annihilation,
        Suite::TensorStructure,
        Suite::AwCalculus,
        Suite::JetCommutant,
        Suite::CoverRank,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Omega => "omega",
            Suite::Annihilation => "annihilation",
            Suite::TensorStructure => "tensor-structure",
            Suite::AwCalculus => "aw-calculus",
            Suite::JetCommutant => "jet-commutant",
            Suite::CoverRank => "cover-rank",
            Suite::All => "all",
        }
    }

    /// The concrete suites this one runs.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL[..7].to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn ser_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    /// Window radius `K`.
    pub window: i64,
    /// Evaluation window radius `K'` for cover ranks.
    pub eval_window: i64,
    pub suite: Suite,
    /// `None` keeps `α` symbolic.
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Option<BigRational>,
    /// `None` keeps `β` symbolic; the only admissible value is 0.
    #[serde(serialize_with = "ser_rational")]
    pub beta: Option<BigRational>,
    /// Order of the differentiator identity.
    pub r: u32,
    /// Cover weights to probe; sampled when empty.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<LatticePoint>,
    /// An extra representation for the AW suite, loaded from a file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jet_rep: Option<NamedRep>,
}

/// A representation with the path it came from; serializes as the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRep {
    pub path: String,
    pub rep: JetRep,
}

impl Serialize for NamedRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.path)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1,
            seed: 1,
            window: 3,
            eval_window: 2,
            suite: Suite::All,
            alpha: None,
            beta: None,
            r: 2,
            weights: Vec::new(),
            jet_rep: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.n == 0 {
            return bad("n must be >= 1".into());
        }
        if self.n > 4 {
            return bad(format!("n = {} is beyond desk scale (max 4)", self.n));
        }
        if self.window < 2 {
            return bad(format!("window must be >= 2, got {}", self.window));
        }
        if self.eval_window < 1 {
            return bad(format!("eval window must be >= 1, got {}", self.eval_window));
        }
        if self.r < 2 {
            return Err(Error::InvalidOrder(self.r));
        }
        if self.beta.as_ref().is_some_and(|b| *b != BigRational::from_integer(0.into())) {
            return bad("beta is either symbolic or 0".into());
        }
        if let Some(w) = self.weights.iter().find(|w| w.dim() != self.n) {
            return bad(format!("weight {w} does not have {} coordinates", self.n));
        }
        if let Some(r) = self.jet_rep.as_ref().filter(|r| r.rep.n() != self.n) {
            return bad(format!("representation in {} has rank {}, expected {}", r.path, r.rep.n(), self.n));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: Value,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, inputs: Value, pass: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            inputs,
            status: if pass { Status::Pass } else { Status::Fail },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureSummary {
    pub name: String,
    pub inputs: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub config: RunConfig,
    pub status: Status,
    /// Sorted by name.
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureSummary>,
    /// Differentiator identity outcomes, when the omega suite ran.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<Value>,
    /// Cover weight-space ranks keyed by parameter label.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub rank_table: BTreeMap<String, usize>,
    /// Wall time; left `null` unless timing is requested, so reports of
    /// equal configurations stay byte-identical.
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
