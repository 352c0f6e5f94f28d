//! JSON report shared by every CLI command.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::numeric::to_decimal;

pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// reported discrepancy that does not fail the run
    Finding,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: Value,
    pub rhs: Value,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, lhs: Value, rhs: Value, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            lhs,
            rhs,
            detail: detail.into(),
        }
    }

    /// Pass when `ok`, fail otherwise.
    pub fn expect(name: impl Into<String>, ok: bool, lhs: Value, rhs: Value, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self::new(name, status, lhs, rhs, detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub rows: Vec<Value>,
    pub checks: Vec<Check>,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            params: BTreeMap::new(),
            rows: Vec::new(),
            checks: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), json!(value));
        self
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// `{"num", "den", "decimal"}`.
pub fn rational(x: &BigRational) -> Value {
    json!({
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
        "decimal": to_decimal(x, DECIMAL_DIGITS),
    })
}

/// Arbitrary-precision integers are written as decimal strings.
pub fn integer(x: &BigInt) -> Value {
    Value::String(x.to_string())
}
