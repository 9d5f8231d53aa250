//! Check reports: named inequalities with the numbers that decided them.
//!
//! A report serializes to JSON and CSV. The wall-clock runtime is kept out of
//! both so that two runs with the same seed and configuration emit identical
//! bytes; it still shows up in the human-readable rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Recorded for the reader but not counted toward the verdict, either
    /// because the check is exploratory or because it is vacuous for the
    /// given configuration.
    Info,
}

/// One inequality: `observed relation bound`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub observed: f64,
    pub bound: f64,
    pub relation: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    /// The claim being certified, in plain language.
    pub claim: String,
    pub status: Verdict,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub values: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl Report {
    pub fn new(name: impl Into<String>, claim: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            claim: claim.into(),
            status: Verdict::Pass,
            seed: None,
            tolerances: BTreeMap::new(),
            values: BTreeMap::new(),
            checks: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.to_owned(), value);
    }

    pub fn value(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_owned(), value);
    }

    fn push(&mut self, name: &str, ok: bool, observed: f64, bound: f64, relation: &'static str) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        if !ok {
            self.status = Verdict::Fail;
        }
        self.checks.push(Check { name: name.to_owned(), status, observed, bound, relation });
    }

    /// Assert `observed <= bound`. NaN fails.
    pub fn check_le(&mut self, name: &str, observed: f64, bound: f64) -> bool {
        let ok = observed <= bound;
        self.push(name, ok, observed, bound, "<=");
        ok
    }

    /// Assert `observed >= bound`. NaN fails.
    pub fn check_ge(&mut self, name: &str, observed: f64, bound: f64) -> bool {
        let ok = observed >= bound;
        self.push(name, ok, observed, bound, ">=");
        ok
    }

    /// Record without asserting.
    pub fn info(&mut self, name: &str, observed: f64, bound: f64, relation: &'static str) {
        self.checks.push(Check {
            name: name.to_owned(),
            status: CheckStatus::Info,
            observed,
            bound,
            relation,
        });
    }

    pub fn passed(&self) -> bool {
        self.status == Verdict::Pass
    }

    pub fn finish(mut self, started: Instant) -> Report {
        self.runtime = started.elapsed();
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One table covering checks, values, and tolerances; empty cells where a
    /// column does not apply.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,name,status,observed,bound,relation\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Info => "info",
            };
            let _ = writeln!(
                out,
                "check,{},{},{},{},{}",
                c.name, status, c.observed, c.bound, c.relation
            );
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "value,{k},,{v},,");
        }
        for (k, v) in &self.tolerances {
            let _ = writeln!(out, "tolerance,{k},,{v},,");
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.name);
        let _ = writeln!(out, "claim: {}", self.claim);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "info",
            };
            let _ = writeln!(
                out,
                "  [{tag}] {}: {:.6e} {} {:.6e}",
                c.name, c.observed, c.relation, c.bound
            );
        }
        for (k, v) in &self.values {
            let _ = writeln!(out, "  {k} = {v:.12}");
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{}: {verdict} ({} ms)", self.name, self.runtime.as_millis());
        out
    }
}
