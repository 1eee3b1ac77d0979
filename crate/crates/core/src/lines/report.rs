use serde::Serialize;

use crate::lines::{Intercept, LineSpec};

/// A nonzero entry inside the region a condition says must vanish.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub s: i32,
    pub t: i32,
    /// Dimension of the entry, or rank of the composite on homology.
    pub dim: usize,
}

/// Outcome for one complex `W` of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub index: usize,
    pub w: i32,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// `"1"`–`"4"` for the conditions; otherwise the name of the check.
    pub condition: String,
    pub premises: Vec<LineSpec>,
    pub conclusion: LineSpec,
    pub holds: bool,
    /// Sorted by `(s, t)`.
    pub witnesses: Vec<Witness>,
    pub members: Vec<MemberReport>,
    /// Supremum of failing intercepts for the conclusion.
    pub beta: Intercept,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn new(
        condition: impl Into<String>,
        conclusion: LineSpec,
        mut witnesses: Vec<Witness>,
        beta: Intercept,
    ) -> Self {
        witnesses.sort();
        Self {
            condition: condition.into(),
            premises: Vec::new(),
            conclusion,
            holds: witnesses.is_empty(),
            witnesses,
            members: Vec::new(),
            beta,
            notes: Vec::new(),
        }
    }

    /// Equal apart from the condition label and per-member detail.
    pub fn same_outcome(&self, other: &VerificationReport) -> bool {
        self.holds == other.holds
            && self.conclusion == other.conclusion
            && self.witnesses == other.witnesses
            && self.beta == other.beta
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
