//! Named pass/fail checks and JSON-ready family summaries.

use std::fmt::Display;

use serde::Serialize;

use crate::combinatorics::{hilbert_summary, HilbertSummary, MonomialIdeal};
use crate::knutson::{ClosureStats, FamilyCertificate, KnutsonFamily, Provenance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement the check exercises.
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, expected: impl Display, actual: impl Display, passed: bool) -> Self {
        Check { name: name.into(), anchor: anchor.into(), expected: expected.to_string(), actual: actual.to_string(), passed }
    }

    /// Passes iff `expected == actual`.
    pub fn equal<T: PartialEq + Display>(name: impl Into<String>, anchor: impl Into<String>, expected: T, actual: T) -> Self {
        let passed = expected == actual;
        Check::new(name, anchor, expected, actual, passed)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// One family member as it appears in JSON reports.
#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub index: usize,
    pub key: String,
    pub generators: Vec<String>,
    pub initial_ideal: MonomialIdeal,
    pub hilbert_summary: HilbertSummary,
    pub provenance: Provenance,
    pub unit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub seed: String,
    pub order: String,
    pub field: String,
    pub members: Vec<MemberReport>,
    pub checks: FamilyCertificate,
    pub stats: ClosureStats,
}

impl FamilyReport {
    pub fn new(family: &KnutsonFamily, checks: FamilyCertificate) -> Self {
        let members = family
            .members()
            .iter()
            .enumerate()
            .map(|(index, m)| MemberReport {
                index,
                key: m.key(),
                generators: m.groebner().basis().iter().map(|g| g.to_string()).collect(),
                initial_ideal: m.initial_ideal().clone(),
                hilbert_summary: hilbert_summary(m.initial_ideal()),
                provenance: m.provenance().clone(),
                unit: m.is_unit(),
            })
            .collect();
        FamilyReport {
            seed: family.seed().to_string(),
            order: family.order().to_string(),
            field: family.ring().field().to_string(),
            members,
            checks,
            stats: family.stats().clone(),
        }
    }
}
