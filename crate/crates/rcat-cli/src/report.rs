//! The report printed by every command.

use std::fmt::Write as _;

use rcat_core::{LawReport, Status, Violation};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub violations: Vec<Violation>,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
    pub details: Map<String, Value>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            status: Status::Pass,
            violations: vec![],
            checked: 0,
            timing_ms: None,
            artifact: None,
            details: Map::new(),
        }
    }

    pub fn absorb(&mut self, mut r: LawReport) {
        r.violations.retain(|v| !self.violations.contains(v));
        let mut mine = LawReport {
            status: self.status,
            passed: self.status == Status::Pass,
            violations: std::mem::take(&mut self.violations),
            checked: self.checked,
        };
        mine.absorb(r);
        self.status = mine.status;
        self.violations = mine.violations;
        self.checked = mine.checked;
    }

    pub fn fail(&mut self, law: &str, witnesses: Vec<String>) {
        self.absorb(LawReport {
            status: Status::Fail,
            passed: false,
            violations: vec![Violation { law: law.into(), witnesses }],
            checked: 0,
        });
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.into(), serde_json::to_value(value).expect("details serialize"));
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Truncated => "truncated",
        };
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "status: {status}");
        let _ = writeln!(out, "checked: {}", self.checked);
        for v in &self.violations {
            let _ = writeln!(out, "violation: {} [{}]", v.law, v.witnesses.join(", "));
        }
        for (k, v) in &self.details {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        if let Some(a) = &self.artifact {
            let _ = writeln!(out, "artifact: {a}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time: {t} ms");
        }
        out
    }
}
