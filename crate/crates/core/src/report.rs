use std::fmt;

use crate::exactlin::FieldMatrix;
use crate::scalar::Scalar;

/// One named axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// On failure, the index of the first basis vector (column of the
    /// compared maps) where the identity breaks.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<usize>) {
        self.checks.push(Check { name: name.into(), passed, witness });
    }

    /// Records the matrix identity `lhs == rhs`.
    pub fn compare<F: Scalar>(&mut self, name: &str, lhs: &FieldMatrix<F>, rhs: &FieldMatrix<F>) {
        let witness = first_differing_column(lhs, rhs);
        self.push(name, witness.is_none(), witness);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn failure_summary(&self) -> String {
        self.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            match c.witness {
                Some(w) => writeln!(f, "{:<28} {status} (basis index {w})", c.name)?,
                None => writeln!(f, "{:<28} {status}", c.name)?,
            }
        }
        Ok(())
    }
}

/// First column where two matrices differ; shape mismatches report column 0.
pub(crate) fn first_differing_column<F: Scalar>(a: &FieldMatrix<F>, b: &FieldMatrix<F>) -> Option<usize> {
    if a.shape() != b.shape() {
        return Some(0);
    }
    (0..a.cols()).find(|&j| (0..a.rows()).any(|i| a[(i, j)] != b[(i, j)]))
}
