//! Verification outcomes and their serialized record form.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::poly::{CongruenceWitness, IntPoly};
use crate::qcomb::ValuationRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    Eq1,
    Eq2,
    Calkin,
    Gjz,
    Gjzq,
    Conj1Window,
    Cj2c1,
    Cj2c2,
    Cj2c3,
    Cj2c1q,
    Cj2c2q,
    Cj2c3q,
    Thm1,
    T2c1,
    T2c2,
    T2c3,
    Lemma21,
    Lemma22,
    Lemma23,
    Lemma24,
    InclusionExclusion,
    Qlucas,
    /// A user-supplied `dividend ≡ 0 (mod modulus)` check.
    Congruence,
}

impl ClaimId {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Eq1 => "eq1",
            ClaimId::Eq2 => "eq2",
            ClaimId::Calkin => "calkin",
            ClaimId::Gjz => "gjz",
            ClaimId::Gjzq => "gjzq",
            ClaimId::Conj1Window => "conj1_window",
            ClaimId::Cj2c1 => "cj2c1",
            ClaimId::Cj2c2 => "cj2c2",
            ClaimId::Cj2c3 => "cj2c3",
            ClaimId::Cj2c1q => "cj2c1q",
            ClaimId::Cj2c2q => "cj2c2q",
            ClaimId::Cj2c3q => "cj2c3q",
            ClaimId::Thm1 => "thm1",
            ClaimId::T2c1 => "t2c1",
            ClaimId::T2c2 => "t2c2",
            ClaimId::T2c3 => "t2c3",
            ClaimId::Lemma21 => "lemma21",
            ClaimId::Lemma22 => "lemma22",
            ClaimId::Lemma23 => "lemma23",
            ClaimId::Lemma24 => "lemma24",
            ClaimId::InclusionExclusion => "inclusion_exclusion",
            ClaimId::Qlucas => "qlucas",
            ClaimId::Congruence => "congruence",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::List(vs) => {
                let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(i64::from(v))
    }
}

impl From<&[u64]> for ParamValue {
    fn from(vs: &[u64]) -> Self {
        ParamValue::List(vs.iter().map(|&v| v as i64).collect())
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_string())
    }
}

/// Named case parameters; keys are kept sorted so output order is stable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.get(key)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Exactly,
    AtLeast,
}

/// What a case asserts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Divisible {
        modulus: IntPoly,
    },
    Equals {
        value: BigInt,
    },
    Valuation {
        p: u64,
        value: u64,
        relation: Relation,
    },
    /// Finite gcd evidence for a statement over infinitely many exponents.
    Evidence {
        central: BigInt,
    },
    NotApplicable,
}

impl Expectation {
    pub fn modulus_text(&self) -> String {
        match self {
            Expectation::Divisible { modulus } => modulus.to_string(),
            Expectation::Equals { value } => value.to_string(),
            Expectation::Valuation { p, value, .. } => format!("{p}^{value}"),
            Expectation::Evidence { central } => central.to_string(),
            Expectation::NotApplicable => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCase {
    pub claim: ClaimId,
    pub params: Params,
    pub expected: Expectation,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Congruence(CongruenceWitness),
    Equality {
        lhs: BigInt,
        rhs: BigInt,
    },
    Valuation {
        observed: ValuationRecord,
        required: ValuationRecord,
    },
    Gcd {
        gcd: BigInt,
        central: BigInt,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: TheoremCase,
    pub status: Status,
    pub witness: Witness,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn quotient_degree(&self) -> Option<u64> {
        match &self.witness {
            Witness::Congruence(w) => w.quotient.as_ref().and_then(|q| q.degree()).map(|d| d as u64),
            _ => None,
        }
    }

    pub fn remainder(&self) -> Option<&IntPoly> {
        match &self.witness {
            Witness::Congruence(w) => w.remainder.as_ref(),
            _ => None,
        }
    }

    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            claim_id: self.case.claim,
            params: self.case.params.clone(),
            modulus: self.case.expected.modulus_text(),
            holds: self.holds(),
            status: self.status,
            quotient_degree: self.quotient_degree(),
            branch_note: self.case.note.clone(),
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            remainder: self.remainder().map(ToString::to_string),
        }
    }

    /// Everything needed to reproduce a failing case by hand.
    pub fn counterexample_dump(&self) -> String {
        let mut out = format!(
            "counterexample: claim={} params={{{}}}\n",
            self.case.claim, self.case.params
        );
        if !self.case.note.is_empty() {
            out += &format!("  note: {}\n", self.case.note);
        }
        match &self.witness {
            Witness::Congruence(w) => {
                out += &format!("  dividend: {}\n", w.dividend);
                out += &format!("  modulus: {}\n", w.modulus);
                if let Some(r) = &w.remainder {
                    out += &format!("  remainder: {r}\n");
                }
            }
            Witness::Equality { lhs, rhs } => {
                out += &format!("  lhs: {lhs}\n  rhs: {rhs}\n");
            }
            Witness::Valuation { observed, required } => {
                out += &format!("  observed: {observed}\n  required: {required}\n");
            }
            Witness::Gcd { gcd, central } => {
                out += &format!("  gcd: {gcd}\n  central: {central}\n");
            }
            Witness::None => {}
        }
        out
    }
}

/// Serialized report row. Field order here is the output field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub claim_id: ClaimId,
    pub params: Params,
    pub modulus: String,
    pub holds: bool,
    pub status: Status,
    pub quotient_degree: Option<u64>,
    pub branch_note: String,
    pub elapsed_ms: f64,
    pub remainder: Option<String>,
}
