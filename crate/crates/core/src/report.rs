//! Outcomes of identity checks.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The identity is not defined at the sampled point.
    SkippedPole,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedPole => "skipped-pole",
        })
    }
}

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub params: String,
    pub n: usize,
    pub m: Option<usize>,
    pub status: Status,
    /// Counterexample values when failing, or the skipped point.
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl Check {
    pub fn new(identity: impl Into<String>, params: impl Into<String>, n: usize) -> Self {
        Check {
            identity: identity.into(),
            params: params.into(),
            n,
            m: None,
            status: Status::Pass,
            witness: None,
            note: None,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Pass when `ok`, otherwise fail with the lazily built witness.
    pub fn expect(mut self, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if !ok {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
        self
    }

    pub fn skipped(mut self, witness: impl Into<String>) -> Self {
        self.status = Status::SkippedPole;
        self.witness = Some(witness.into());
        self
    }
}

pub fn count(checks: &[Check], status: Status) -> usize {
    checks.iter().filter(|c| c.status == status).count()
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

/// Failures only, for assertion messages.
pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| c.status == Status::Fail).collect()
}
