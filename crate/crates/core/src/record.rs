//! Uniform carrier for an evaluated inequality `lhs ≤ rhs`.

use serde::{Deserialize, Serialize};

/// Absolute/relative slack granted to every inequality:
/// a bound holds iff `lhs ≤ rhs + abs + rel·|rhs|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub abs: f64,
    pub rel: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { abs: 1e-9, rel: 1e-9 }
    }
}

impl TolerancePolicy {
    pub fn allowance(&self, rhs: f64) -> f64 {
        self.abs + self.rel * rhs.abs()
    }

    pub fn holds(&self, lhs: f64, rhs: f64) -> bool {
        lhs <= rhs + self.allowance(rhs)
    }

    /// Within `factor` times the allowance but not holding.
    pub fn near_miss(&self, lhs: f64, rhs: f64, factor: f64) -> bool {
        !self.holds(lhs, rhs) && lhs <= rhs + factor * self.allowance(rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub bound_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tightness: f64,
    pub preconditions_met: bool,
    pub notes: String,
}

impl BoundRecord {
    pub fn new(bound_id: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            bound_id: bound_id.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            tightness: tightness(lhs, rhs),
            preconditions_met: true,
            notes: String::new(),
        }
    }

    pub fn with_preconditions(mut self, met: bool) -> Self {
        self.preconditions_met = met;
        self
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note.as_ref());
        self
    }

    pub fn holds(&self) -> bool {
        self.holds_with(&TolerancePolicy::default())
    }

    pub fn holds_with(&self, policy: &TolerancePolicy) -> bool {
        policy.holds(self.lhs, self.rhs)
    }
}

/// `lhs/rhs`, with `0/0 = 0`. A positive `lhs` over a zero `rhs` is infinite.
pub fn tightness(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(lhs)
        }
    } else {
        lhs / rhs
    }
}
