//! Pass/fail reports shared by every verification suite.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One law or property, checked on a number of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub failures: u64,
    /// The first failing case in enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        Check { name: name.into(), passed: true, cases, failures: 0, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, cases: u64, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            cases,
            failures: 1,
            counterexample: Some(witness.into()),
        }
    }
}

/// Runs `f` over every case in parallel; `Some(witness)` marks a failure.
pub fn run_cases<T, F>(name: impl Into<String>, cases: &[T], f: F) -> Check
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    let failures: Vec<(usize, String)> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, c)| f(c).map(|w| (i, w)))
        .collect();
    let first = failures.iter().min_by_key(|(i, _)| *i).map(|(_, w)| w.clone());
    Check {
        name: name.into(),
        passed: failures.is_empty(),
        cases: cases.len() as u64,
        failures: failures.len() as u64,
        counterexample: first,
    }
}

/// Compares two renderable values, returning a witness when they differ.
pub fn differ<T: PartialEq + fmt::Debug>(what: &str, lhs: &T, rhs: &T) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{what}: lhs = {lhs:?}, rhs = {rhs:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            passed: true,
            config: BTreeMap::new(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn with_config(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.config.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    /// Folds another report's checks in, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn total_cases(&self) -> u64 {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}", self.suite, if self.passed { "PASS" } else { "FAIL" })?;
        for (k, v) in &self.config {
            writeln!(f, "  {k} = {v}")?;
        }
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "  [{status}] {} ({} cases, {} failures)", c.name, c.cases, c.failures)?;
            if let Some(w) = &c.counterexample {
                writeln!(f, "         counterexample: {w}")?;
            }
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(f, "  elapsed: {ms} ms")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_deterministic() {
        let cases: Vec<u32> = (0..1000).collect();
        let c = run_cases("odd", &cases, |x| (x % 7 == 3).then(|| format!("{x}")));
        assert!(!c.passed);
        assert_eq!(c.counterexample.as_deref(), Some("3"));
        assert_eq!(c.failures, 143);
    }

    #[test]
    fn report_tracks_status() {
        let mut r = Report::new("t");
        r.push(Check::pass("a", 1));
        assert!(r.passed);
        r.push(Check::fail("b", 1, "x"));
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
    }
}
