use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Converts a failure into [`Error::CheckFailed`] labelled `check`.
    pub fn into_result(self, check: &str) -> Result<()> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(w) => Err(Error::check(check, w)),
        }
    }
}
