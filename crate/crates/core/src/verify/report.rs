// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::VerifyError;
use crate::ff::{Fq2, Pair};

/// Parameters echoed into every report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    pub delta: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    pub modulus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ReportParams {
    pub fn for_field(f: &Fq2) -> Self {
        Self {
            q: f.q(),
            delta: f.delta(),
            modulus: f.base().descriptor().modulus_string(),
            ..Self::default()
        }
    }

    pub fn with_ab(mut self, f: &Fq2, a: u32, b: u32) -> Self {
        self.a = Some(Pair(f, a).to_string());
        self.b = Some(Pair(f, b).to_string());
        self
    }
}

/// One checked claim. `pass` is `None` for a claim that was not run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: ReportParams,
    pub pass: Option<bool>,
    pub measured: Value,
    pub expected: Value,
    pub seconds: f64,
}

impl VerificationReport {
    /// Times `body`, which returns `(pass, measured, expected)`.
    pub fn run(
        claim: &str,
        params: &ReportParams,
        body: impl FnOnce() -> Result<(bool, Value, Value), VerifyError>,
    ) -> Result<Self, VerifyError> {
        let start = Instant::now();
        let (pass, measured, expected) = body()?;
        Ok(Self {
            claim: claim.to_string(),
            params: params.clone(),
            pass: Some(pass),
            measured,
            expected,
            seconds: start.elapsed().as_secs_f64(),
        })
    }

    pub fn not_run(claim: &str, params: &ReportParams, reason: &str) -> Self {
        Self {
            claim: claim.to_string(),
            params: params.clone(),
            pass: None,
            measured: serde_json::json!({ "not_run": reason }),
            expected: Value::Null,
            seconds: 0.0,
        }
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    /// The report with its wall time zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self { seconds: 0.0, ..self.clone() }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.pass {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        };
        write!(out, "{status} {} q={} ({:.3}s) {}", self.claim, self.params.q, self.seconds, self.measured)
    }
}
