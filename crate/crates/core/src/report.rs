//! Named pass/fail results, serialized as `{"NAME": bool, …}` in insertion order.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.push_detail(name, pass, String::new());
    }

    pub fn push_detail(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{} {}", c.name, verdict)?;
            } else {
                writeln!(f, "{} {}  {}", c.name, verdict, c.detail)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.checks.len()))?;
        for c in &self.checks {
            map.serialize_entry(&c.name, &c.pass)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_order() {
        let mut r = Report::new();
        r.push("GG2", true);
        r.push("GG1", false);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"GG2":true,"GG1":false}"#);
        assert!(!r.all_pass());
        assert_eq!(r.to_string(), "GG2 PASS\nGG1 FAIL\n");
    }
}
