use std::fmt;

use serde::Serialize;

/// Outcome of one axiom check. `witness` is the first basis index (column)
/// at which the two sides of the identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<usize>,
}

/// Per-axiom results. Failures are data, not errors, so every failed axiom
/// can be shown at once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, axiom: impl Into<String>, witness: Option<usize>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn pass(&mut self, axiom: impl Into<String>) {
        self.record(axiom, None);
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: usize) {
        self.record(axiom, Some(witness));
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<_> = self.failures().collect();
        if failed.is_empty() {
            return write!(f, "all {} axioms hold", self.checks.len());
        }
        for (i, c) in failed.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            match c.witness {
                Some(w) => write!(f, "{} fails at basis index {w}", c.axiom)?,
                None => write!(f, "{} fails", c.axiom)?,
            }
        }
        Ok(())
    }
}

/// Named boolean checks run on a construction after it is built.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub checks: Vec<CertificateCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub name: String,
    pub passed: bool,
}

impl Certificate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(CertificateCheck {
            name: name.into(),
            passed,
        });
    }

    /// Folds a validation report into a single named check.
    pub fn check_report(&mut self, name: impl Into<String>, report: &ValidationReport) {
        self.check(name, report.is_valid());
    }

    /// True when no check was run (certification was skipped).
    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "not certified");
        }
        let failed: Vec<_> = self.failures().collect();
        if failed.is_empty() {
            write!(f, "{} checks passed", self.checks.len())
        } else {
            write!(f, "failed: {}", failed.join(", "))
        }
    }
}
