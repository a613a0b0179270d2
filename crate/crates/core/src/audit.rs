//! Runtime checks of the inequalities the constructions rely on.
//!
//! Each check carries a claim label. A failed check becomes an [`Anomaly`]
//! rather than a panic so that drivers can report it.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anomaly {
    pub claim: &'static str,
    pub detail: String,
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim {} failed: {}", self.claim, self.detail)
    }
}

impl std::error::Error for Anomaly {}

/// Count of passed checks per claim label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditLog {
    passed: BTreeMap<&'static str, usize>,
}

impl AuditLog {
    pub fn new() -> Self {
        AuditLog::default()
    }

    pub fn check(
        &mut self,
        claim: &'static str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) -> Result<(), Anomaly> {
        if ok {
            *self.passed.entry(claim).or_insert(0) += 1;
            Ok(())
        } else {
            Err(Anomaly {
                claim,
                detail: detail(),
            })
        }
    }

    /// Records an event that is not an inequality, e.g. which exit fired.
    pub fn note(&mut self, label: &'static str) {
        *self.passed.entry(label).or_insert(0) += 1;
    }

    pub fn count(&self, claim: &str) -> usize {
        self.passed.get(claim).copied().unwrap_or(0)
    }

    pub fn claims(&self) -> impl Iterator<Item = (&'static str, usize)> + '_ {
        self.passed.iter().map(|(&k, &v)| (k, v))
    }

    pub fn merge(&mut self, other: &AuditLog) {
        for (k, v) in other.claims() {
            *self.passed.entry(k).or_insert(0) += v;
        }
    }
}

pub fn anomaly(claim: &'static str, detail: impl Into<String>) -> Anomaly {
    Anomaly {
        claim,
        detail: detail.into(),
    }
}
