//! Validation reports shared by every checker in the crate.

use std::fmt;

use serde::Serialize;

/// Whether a violation concerns the shape of the data or one of its laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Dangling ids, missing table entries, mistyped components.
    Structural,
    /// A law (axiom, naturality square, commuting diagram) fails.
    Law,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Short stable name of the failed check, e.g. `"right_unit"`.
    pub check: String,
    /// Human readable detail naming the offending ids.
    pub detail: String,
}

/// A list of violations; empty means the checked structure is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn structural(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind: ViolationKind::Structural,
            check: check.into(),
            detail: detail.into(),
        });
    }

    pub fn law(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind: ViolationKind::Law,
            check: check.into(),
            detail: detail.into(),
        });
    }

    pub fn has_structural(&self) -> bool {
        self.violations
            .iter()
            .any(|v| v.kind == ViolationKind::Structural)
    }

    /// True if some violation carries the given check name.
    pub fn mentions(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Appends `other`, prefixing every check name with `scope.`.
    pub fn extend_scoped(&mut self, scope: &str, other: ValidationReport) {
        self.violations
            .extend(other.violations.into_iter().map(|mut v| {
                v.check = format!("{scope}.{}", v.check);
                v
            }));
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let kind = match v.kind {
                ViolationKind::Structural => "structural",
                ViolationKind::Law => "law",
            };
            write!(f, "[{kind}] {}: {}", v.check, v.detail)?;
        }
        Ok(())
    }
}
