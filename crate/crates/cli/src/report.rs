//! Command reports, rendered as text or JSON from the same data.

use std::fmt::{self, Write as _};

use postlie::linalg::vector::format_basis;
use postlie::{Verdict, Witness};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOut {
    pub identity: String,
    pub at: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        Self {
            identity: w.identity.to_string(),
            at: w.tuple(),
            lhs: format_basis(&w.lhs),
            rhs: format_basis(&w.rhs),
            residual: format_basis(&w.residual()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub failures: usize,
    pub witnesses: Vec<WitnessOut>,
}

impl Check {
    pub fn from_verdict(name: impl Into<String>, v: &Verdict) -> Self {
        Self {
            name: name.into(),
            ok: v.is_ok(),
            failures: v.failures(),
            witnesses: v.witnesses().iter().map(WitnessOut::from).collect(),
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            ok,
            failures: usize::from(!ok),
            witnesses: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub facts: Vec<Fact>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            passed: true,
            checks: Vec::new(),
            facts: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.passed &= c.ok;
        self.checks.push(c);
    }

    pub fn verdict(&mut self, name: &str, v: &Verdict) {
        self.check(Check::from_verdict(name, v));
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fact in &self.facts {
            writeln!(f, "{}: {}", fact.name, fact.value)?;
        }
        for c in &self.checks {
            if c.ok {
                writeln!(f, "{}: ok", c.name)?;
                continue;
            }
            let mut line = format!("{}: FAILED", c.name);
            if !c.witnesses.is_empty() {
                write!(line, " ({} failing instances)", c.failures)?;
            }
            writeln!(f, "{line}")?;
            let mut last: Option<&str> = None;
            for w in &c.witnesses {
                if last != Some(w.identity.as_str()) {
                    writeln!(f, "  identity {}", w.identity)?;
                    last = Some(&w.identity);
                }
                writeln!(
                    f,
                    "    {}: residual {} (lhs {}, rhs {})",
                    w.at, w.residual, w.lhs, w.rhs
                )?;
            }
        }
        writeln!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}
