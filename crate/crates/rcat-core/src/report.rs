use serde::{Deserialize, Serialize};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witnesses: Vec<String>,
}

/// Outcome of a law check. `passed` holds exactly when `violations` is empty
/// and the instance was not truncated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub status: Status,
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Number of individual equations that held.
    pub checked: u64,
}

impl LawReport {
    pub fn pass() -> Self {
        LawReport { status: Status::Pass, passed: true, violations: vec![], checked: 0 }
    }

    pub fn truncated(count: usize, cap: usize) -> Self {
        LawReport {
            status: Status::Truncated,
            passed: false,
            violations: vec![Violation {
                law: "size-cap".into(),
                witnesses: vec![format!("{count} morphisms > cap {cap}")],
            }],
            checked: 0,
        }
    }

    pub fn first_law(&self) -> Option<&str> {
        self.violations.first().map(|v| v.law.as_str())
    }

    /// Fold another report into this one (sub-checks of a composite check).
    pub fn absorb(&mut self, other: LawReport) {
        self.checked += other.checked;
        if other.status == Status::Truncated && self.status == Status::Pass {
            self.status = Status::Truncated;
        }
        if !other.violations.is_empty() {
            if self.status != Status::Truncated {
                self.status = Status::Fail;
            }
            self.violations.extend(other.violations);
        }
        self.passed = self.status == Status::Pass;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub cap: usize,
    pub all_violations: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { cap: DEFAULT_CAP, all_violations: false }
    }
}

impl CheckOptions {
    pub fn all() -> Self {
        CheckOptions { all_violations: true, ..Self::default() }
    }
}

/// Accumulates violations for one check; see `ensure_law!`.
pub struct Checker {
    opts: CheckOptions,
    report: LawReport,
}

impl Checker {
    pub fn new(opts: CheckOptions) -> Self {
        Checker { opts, report: LawReport::pass() }
    }

    pub fn tick(&mut self) {
        self.report.checked += 1;
    }

    /// Returns true when the caller should stop.
    pub fn fail(&mut self, law: &str, witnesses: Vec<String>) -> bool {
        self.report.violations.push(Violation { law: law.to_string(), witnesses });
        self.report.status = Status::Fail;
        self.report.passed = false;
        !self.opts.all_violations
    }

    pub fn stopped(&self) -> bool {
        !self.opts.all_violations && !self.report.violations.is_empty()
    }

    pub fn absorb(&mut self, other: LawReport) -> bool {
        self.report.absorb(other);
        self.stopped()
    }

    pub fn finish(&mut self) -> LawReport {
        std::mem::replace(&mut self.report, LawReport::pass())
    }
}
