//! Versioned, deterministic reports. The text form is rendered from the JSON value.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "greencorr/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Report {
        Report { schema: SCHEMA.into(), command: command.into(), seed, entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.entries.push(Entry { name: name.into(), status, details: details.into() });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, details: impl Into<String>) {
        self.push(name, if pass { Status::Pass } else { Status::Fail }, details);
    }

    /// Records the outcome of a fallible check; `Undecided` errors become undecided entries
    /// and every other error a failure carrying the message.
    pub fn record(&mut self, name: impl Into<String>, r: Result<(bool, String)>) {
        match r {
            Ok((pass, details)) => self.check(name, pass, details),
            Err(Error::Undecided(m)) => self.push(name, Status::Undecided, m),
            Err(e) => self.push(name, Status::Fail, e.to_string()),
        }
    }

    pub fn extend(&mut self, o: Report) {
        self.entries.extend(o.entries);
    }

    pub fn status(&self) -> Status {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if self.entries.iter().any(|e| e.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    /// 0 pass, 1 verified failure, 3 undecided.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("serializable"))
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn render_text(v: &Value) -> String {
    let s = |k: &str| match &v[k] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = format!("{}\ncommand: {}\nseed: {}\n", s("schema"), s("command"), s("seed"));
    let entries = v["entries"].as_array().cloned().unwrap_or_default();
    let mut counts = [0usize; 3];
    for e in &entries {
        let status = e["status"].as_str().unwrap_or("");
        counts[match status {
            "pass" => 0,
            "fail" => 1,
            _ => 2,
        }] += 1;
        let details = e["details"].as_str().unwrap_or("");
        out += &format!("{:<9} {}", status.to_uppercase(), e["name"].as_str().unwrap_or(""));
        if !details.is_empty() {
            out += &format!(": {details}");
        }
        out.push('\n');
    }
    out += &format!("{} passed, {} failed, {} undecided\n", counts[0], counts[1], counts[2]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_exit_codes() {
        let mut r = Report::new("verify demo", 7);
        r.check("a", true, "");
        assert_eq!(r.exit_code(), 0);
        r.record("b", Err(Error::Undecided("budget".into())));
        assert_eq!(r.exit_code(), 3);
        r.record("c", Err(Error::Invariant("x".into())));
        assert_eq!(r.exit_code(), 1);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("UNDECIDED b: budget"));
    }
}
