//! Structured scenario reports: line-delimited JSON, deterministic for a
//! fixed seed apart from the timing field.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "escalate")]
    Escalate,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

/// One scenario outcome.  Field order is the serialization order;
/// `duration_ms` is deliberately last so that timing-insensitive
/// comparisons can strip it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub status: Status,
    /// Self-contained statement of the property this scenario checks.
    pub claim: String,
    #[serde(rename = "type")]
    pub kind: char,
    pub rank: usize,
    pub p: u64,
    pub seed: u64,
    pub samples: usize,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub version: String,
    pub duration_ms: u64,
}

impl Report {
    pub fn new(scenario: &str, claim: &str, kind: char, rank: usize, p: u64) -> Report {
        Report {
            scenario: scenario.to_string(),
            status: Status::Pass,
            claim: claim.to_string(),
            kind,
            rank,
            p,
            seed: 0,
            samples: 0,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_ms: 0,
        }
    }

    pub fn count(&mut self, name: &str, value: u64) {
        self.counts.insert(name.to_string(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn witness(&mut self, text: impl Into<String>) {
        self.witnesses.push(text.into());
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
    }

    /// Escalation is a reported outcome, not a failure: density-based
    /// witness searches only fail once the prime ladder is exhausted.
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Remove the timing field from a JSON report line, for byte-stable
/// comparisons across runs.
pub fn strip_timing(line: &str) -> String {
    match serde_json::from_str::<serde_json::Value>(line) {
        Ok(mut v) => {
            if let Some(obj) = v.as_object_mut() {
                obj.remove("duration_ms");
            }
            v.to_string()
        }
        Err(_) => line.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_timing_strip() {
        let mut r = Report::new("span", "the cone spans", 'C', 2, 3);
        r.seed = 7;
        r.count("points", 81);
        r.duration_ms = 1234;
        let line = r.to_json_line();
        assert!(line.starts_with("{\"scenario\":\"span\""));
        assert!(line.contains("\"type\":\"C\""));
        assert!(line.contains("\"duration_ms\":1234"));
        let stripped = strip_timing(&line);
        assert!(!stripped.contains("duration_ms"));
        let mut r2 = r.clone();
        r2.duration_ms = 9;
        assert_eq!(stripped, strip_timing(&r2.to_json_line()));
    }

    #[test]
    fn status_round_trip() {
        for (s, txt) in [
            (Status::Pass, "\"pass\""),
            (Status::Fail, "\"fail\""),
            (Status::Escalate, "\"escalate\""),
            (Status::NotApplicable, "\"not-applicable\""),
        ] {
            assert_eq!(serde_json::to_string(&s).unwrap(), txt);
            let back: Status = serde_json::from_str(txt).unwrap();
            assert_eq!(back, s);
        }
    }
}
