//! Check reports: the JSON regression artifact shared by every
//! verification entry point and the CLI.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

/// One assertion: `observed` must match `expected` within `tolerance`
/// (numeric values), or exactly (everything else, tolerance 0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub tolerance: f64,
}

impl CheckItem {
    pub fn within_tolerance(&self) -> bool {
        match (self.expected.as_f64(), self.observed.as_f64()) {
            (Some(e), Some(o)) => (e - o).abs() <= self.tolerance,
            _ => self.expected == self.observed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub items: Vec<CheckItem>,
    pub counterexample: Option<String>,
    pub duration_ms: u64,
    pub seed: u64,
    pub library_version: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Error report: the check could not run at all (bad parameters,
    /// missing calibration). Distinguished from a mathematical `Fail`.
    pub fn usage_error(check_id: &str, params: BTreeMap<String, String>, message: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            params,
            status: CheckStatus::Error,
            items: Vec::new(),
            counterexample: Some(message.to_string()),
            duration_ms: 0,
            seed: 0,
            library_version: LIBRARY_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Serialization with the wall-clock field zeroed; two runs with the
    /// same (check_id, params, seed, library_version) agree byte for byte
    /// on this form.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut stable = self.clone();
        stable.duration_ms = 0;
        serde_json::to_vec(&stable).expect("report serializes")
    }

    /// One-line summary used in suite output.
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Error => "ERROR",
        };
        let params: Vec<String> =
            self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{:5} {} [{}] ({} items, {} ms)", status, self.check_id, params.join(" "), self.items.len(), self.duration_ms)
    }
}

/// Accumulates items, derives the status, and stamps timing and seed.
pub struct ReportBuilder {
    check_id: String,
    params: BTreeMap<String, String>,
    seed: u64,
    items: Vec<CheckItem>,
    counterexample: Option<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check_id: &str, seed: u64) -> ReportBuilder {
        ReportBuilder {
            check_id: check_id.to_string(),
            params: BTreeMap::new(),
            seed,
            items: Vec::new(),
            counterexample: None,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Exact item (tolerance 0).
    pub fn item(&mut self, name: &str, expected: impl Into<Value>, observed: impl Into<Value>) {
        self.item_tol(name, expected, observed, 0.0);
    }

    pub fn item_tol(
        &mut self,
        name: &str,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        tolerance: f64,
    ) {
        self.items.push(CheckItem {
            name: name.to_string(),
            expected: expected.into(),
            observed: observed.into(),
            tolerance,
        });
    }

    /// Records the first witness of a failure; later calls are ignored.
    pub fn counterexample(&mut self, witness: impl ToString) {
        self.counterexample.get_or_insert_with(|| witness.to_string());
    }

    pub fn finish(self) -> CheckReport {
        let failed: Vec<&CheckItem> =
            self.items.iter().filter(|i| !i.within_tolerance()).collect();
        let status = if failed.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        let counterexample = match status {
            // a counterexample accompanies failures and nothing else
            CheckStatus::Fail => self.counterexample.or_else(|| {
                failed.first().map(|i| format!("item `{}` out of tolerance", i.name))
            }),
            _ => None,
        };
        CheckReport {
            check_id: self.check_id,
            params: self.params,
            status,
            items: self.items,
            counterexample,
            duration_ms: self.started.elapsed().as_millis() as u64,
            seed: self.seed,
            library_version: LIBRARY_VERSION.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_from_items() {
        let mut b = ReportBuilder::new("demo", 7);
        b.item("exact", 3, 3);
        b.item_tol("close", 1.0, 1.0005, 1e-3);
        let r = b.finish();
        assert!(r.passed());
        assert!(r.counterexample.is_none());
        assert_eq!(r.seed, 7);
    }

    #[test]
    fn failure_carries_counterexample() {
        let mut b = ReportBuilder::new("demo", 0);
        b.item("bad", json!("x"), json!("y"));
        let r = b.finish();
        assert_eq!(r.status, CheckStatus::Fail);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn canonical_bytes_drop_duration() {
        let mut a = ReportBuilder::new("demo", 1);
        a.item("v", 1, 1);
        let mut a = a.finish();
        let mut b = a.clone();
        a.duration_ms = 3;
        b.duration_ms = 99;
        assert_eq!(a.canonical_bytes(), b.canonical_bytes());
    }
}
