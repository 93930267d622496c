//! Check records and reports shared by every verification suite.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Human-readable residual or detail, empty when there is nothing to say.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub residual: String,
    /// What relation or table item the check is about.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check { name: name.into(), status, residual: String::new(), anchor: String::new(), certificate: None }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> Self {
        Check { residual: residual.into(), ..Self::new(name, Status::Fail) }
    }

    pub fn inconclusive(name: impl Into<String>, residual: impl Into<String>) -> Self {
        Check { residual: residual.into(), ..Self::new(name, Status::Inconclusive) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, residual: impl Into<String>) -> Self {
        let residual = if ok { String::new() } else { residual.into() };
        Check { residual, ..Self::new(name, Status::from_bool(ok)) }
    }

    pub fn anchor(mut self, a: impl Into<String>) -> Self {
        self.anchor = a.into();
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.residual = d.into();
        self
    }

    pub fn certificate(mut self, v: Value) -> Self {
        self.certificate = Some(v);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn for_command(cmd: impl Into<String>) -> Self {
        Report { command: Some(cmd.into()), ..Report::default() }
    }

    pub fn push(&mut self, c: Check) {
        match c.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Inconclusive => self.summary.inconclusive += 1,
        }
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.command {
            let _ = writeln!(out, "# {c}");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let _ = write!(out, "{tag:<12} {}", c.name);
            if !c.residual.is_empty() {
                let _ = write!(out, "  [{}]", c.residual);
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(out, "pass={} fail={} inconclusive={}", s.pass, s.fail, s.inconclusive);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        assert_eq!(Report::new().to_json(), r#"{"checks":[],"summary":{"pass":0,"fail":0,"inconclusive":0}}"#);
    }

    #[test]
    fn single_pass() {
        let mut r = Report::new();
        r.push(Check::pass("x"));
        assert_eq!(r.summary.pass, 1);
        assert!(r.ok());
        r.push(Check::new("y", Status::Inconclusive));
        assert!(r.ok());
        r.push(Check::fail("z", "1"));
        assert!(!r.ok());
    }
}
