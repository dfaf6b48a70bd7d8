//! Pass/fail records for the verification suites.

use std::fmt;

/// One named verification check. `detail` holds the first counterexample on
/// failure, or recorded values on pass; only failures print it.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            detail: None,
        }
    }

    pub fn pass_with(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            detail: Some(detail.into()),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: false,
            detail: Some(detail.into()),
        }
    }

    pub fn from_flag(name: impl Into<String>, pass: bool, fail_detail: impl Into<String>) -> Check {
        if pass {
            Check::pass(name)
        } else {
            Check::fail(name, fail_detail)
        }
    }

    /// Failure carries the witness; pass keeps the line bare.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Check {
        match failure {
            None => Check::pass(name),
            Some(detail) => Check::fail(name, detail),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "CHECK {} PASS", self.name)
        } else {
            match &self.detail {
                Some(d) => write!(f, "CHECK {} FAIL {}", self.name, d),
                None => write!(f, "CHECK {} FAIL", self.name),
            }
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
