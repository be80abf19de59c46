//! Verification reports.
//!
//! A [`SuiteReport`] serializes to JSON as
//!
//! ```json
//! {
//!   "report_version": 1,
//!   "suite": "algebra",
//!   "seed": 42,
//!   "samples": { "algebraic": 1000, "integral": 1000000 },
//!   "records": [
//!     {
//!       "suite": "algebra",
//!       "name": "composition.octonion",
//!       "max_residual": 4.4e-16,
//!       "tolerance": 1e-12,
//!       "expectation": "at_most",
//!       "passed": true
//!     }
//!   ],
//!   "summary": { "total": 1, "passed": 1, "failed": 0 }
//! }
//! ```
//!
//! `max_residual` is `null` when the check raised an error (the message is
//! in `error`). `runtime_ms` appears only when timings were requested, so
//! reports for the same seed and sample counts are byte-identical.

use std::time::Instant;

use serde::Serialize;

use crate::Result;

pub const REPORT_VERSION: u32 = 1;

/// How a residual is compared with its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Pass when `residual ≤ tolerance`.
    AtMost,
    /// Pass when `residual > tolerance` (negative controls).
    Above,
    /// Informational; always passes.
    Report,
}

impl Expectation {
    pub fn accepts(self, residual: f64, tolerance: f64) -> bool {
        match self {
            Expectation::AtMost => residual <= tolerance,
            Expectation::Above => residual > tolerance,
            Expectation::Report => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub expectation: Expectation,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

/// Result of one check body: the residual and an optional note.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub residual: f64,
    pub detail: Option<String>,
}

impl From<f64> for Outcome {
    fn from(residual: f64) -> Self {
        Self { residual, detail: None }
    }
}

impl Outcome {
    pub fn with_detail(residual: f64, detail: impl Into<String>) -> Self {
        Self { residual, detail: Some(detail.into()) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCounts {
    pub algebraic: usize,
    pub integral: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub report_version: u32,
    pub suite: String,
    pub seed: u64,
    pub samples: SampleCounts,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, samples: SampleCounts, records: Vec<CheckRecord>) -> Self {
        let passed = records.iter().filter(|r| r.passed).count();
        let summary = Summary { total: records.len(), passed, failed: records.len() - passed };
        Self { report_version: REPORT_VERSION, suite: suite.into(), seed, samples, records, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports contain only serializable data");
        s.push('\n');
        s
    }
}

/// Runs check bodies and collects their records in call order.
#[derive(Debug)]
pub struct Recorder {
    suite: String,
    timings: bool,
    records: Vec<CheckRecord>,
}

impl Recorder {
    pub fn new(suite: impl Into<String>, timings: bool) -> Self {
        Self { suite: suite.into(), timings, records: Vec::new() }
    }

    pub fn check<O: Into<Outcome>>(
        &mut self,
        name: &str,
        tolerance: f64,
        expectation: Expectation,
        body: impl FnOnce() -> Result<O>,
    ) {
        let start = Instant::now();
        let result = body();
        let runtime_ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (max_residual, detail, error, passed) = match result {
            Ok(o) => {
                let o = o.into();
                (Some(o.residual), o.detail, None, expectation.accepts(o.residual, tolerance))
            }
            Err(e) => (None, None, Some(e.to_string()), false),
        };
        self.records.push(CheckRecord {
            suite: self.suite.clone(),
            name: name.to_string(),
            max_residual,
            tolerance,
            expectation,
            passed,
            detail,
            error,
            runtime_ms,
        });
    }

    pub fn at_most<O: Into<Outcome>>(&mut self, name: &str, tolerance: f64, body: impl FnOnce() -> Result<O>) {
        self.check(name, tolerance, Expectation::AtMost, body);
    }

    pub fn above<O: Into<Outcome>>(&mut self, name: &str, tolerance: f64, body: impl FnOnce() -> Result<O>) {
        self.check(name, tolerance, Expectation::Above, body);
    }

    pub fn finish(self) -> Vec<CheckRecord> {
        self.records
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn summary_counts_records() {
        let mut r = Recorder::new("t", false);
        r.at_most("ok", 1.0, || Ok(0.5));
        r.at_most("bad", 1.0, || Ok(2.0));
        r.above("control", 1.0, || Ok(2.0));
        r.at_most("err", 1.0, || -> Result<f64> { Err(Error::Domain("x".into())) });
        r.check("info", 0.0, Expectation::Report, || Ok(Outcome::with_detail(3.0, "note")));
        let report = SuiteReport::new("t", 1, SampleCounts { algebraic: 1, integral: 1 }, r.finish());
        assert_eq!(report.summary, Summary { total: 5, passed: 3, failed: 2 });
        assert!(!report.all_passed());
        let err = report.record("err").unwrap();
        assert_eq!(err.max_residual, None);
        assert!(err.error.as_deref().unwrap().contains("domain error"));
    }

    #[test]
    fn json_omits_timings_unless_requested() {
        let mut r = Recorder::new("t", false);
        r.at_most("a", 1e-12, || Ok(0.1 + 0.2));
        let json = SuiteReport::new("t", 7, SampleCounts { algebraic: 2, integral: 3 }, r.finish()).to_json();
        assert!(!json.contains("runtime_ms"));
        assert!(json.contains("\"report_version\": 1"));
        assert!(json.contains("0.30000000000000004"));
        let mut r = Recorder::new("t", true);
        r.at_most("a", 1.0, || Ok(0.0));
        assert!(r.finish()[0].runtime_ms.is_some());
    }
}
