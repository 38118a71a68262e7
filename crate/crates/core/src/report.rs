//! Pass/fail records produced by the verification suites.

use std::fmt;

use serde::Serialize;
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub instance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, id: impl Into<String>, instance: impl Into<String>, pass: bool) {
        self.checks.push(Check { id: id.into(), instance: instance.into(), pass });
    }

    /// Records a family of `total` instances: one PASS line when nothing
    /// failed, otherwise one FAIL line per failing instance.
    pub fn tally(&mut self, id: &str, scope: &str, total: usize, mut failures: Vec<String>) {
        if failures.is_empty() {
            let instance = if scope.is_empty() {
                format!("{total} instances")
            } else {
                format!("{scope}: {total} instances")
            };
            self.push(id, instance, true);
        } else {
            failures.sort();
            for f in failures {
                let instance = if scope.is_empty() { f } else { format!("{scope}: {f}") };
                self.push(id, instance, false);
            }
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "checks": self.checks,
            "summary": {
                "total": self.checks.len(),
                "passed": self.passed(),
                "failed": self.failed(),
                "all_pass": self.all_pass(),
            }
        })
    }
}

/// One `PASS|FAIL <id> <instance>` line per check.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.instance)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_collapses_passes() {
        let mut r = Report::new();
        r.tally("x", "ising", 27, vec![]);
        r.tally("y", "", 3, vec!["(b)".into(), "(a)".into()]);
        assert_eq!(r.checks.len(), 3);
        assert_eq!(r.to_string(), "PASS x ising: 27 instances\nFAIL y (a)\nFAIL y (b)\n");
        assert!(!r.all_pass());
        assert_eq!(r.to_json()["summary"]["failed"], 2);
    }
}
