//! Verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

/// Enough data to replay a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub patterns: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub detail: String,
}

/// Outcome of one claim checked over a bounded search space. A verdict of
/// `holds` means no counterexample exists within the stated parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of elementary comparisons made.
    pub checked: u64,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// One line: claim, verdict and the parameters.
    pub fn summary(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        let mut line = format!(
            "{}: {} ({} checks, {:.1} ms) {}",
            self.claim,
            match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "FAILS",
            },
            self.checked,
            self.elapsed_ms,
            params.join(" ")
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!("\n  witness: {}", w.detail));
        }
        line
    }
}

pub(crate) struct ReportBuilder {
    claim: String,
    params: BTreeMap<String, Value>,
    start: Instant,
    checked: u64,
}

impl ReportBuilder {
    pub(crate) fn new(claim: &str) -> Self {
        ReportBuilder {
            claim: claim.to_string(),
            params: BTreeMap::new(),
            start: Instant::now(),
            checked: 0,
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub(crate) fn count(&mut self, n: u64) {
        self.checked += n;
    }

    pub(crate) fn finish(self, witness: Option<Witness>) -> Report {
        Report {
            claim: self.claim,
            params: self.params,
            verdict: if witness.is_some() {
                Verdict::Fails
            } else {
                Verdict::Holds
            },
            witness,
            checked: self.checked,
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}
