//! Law reports: the uniform result type of every checker.
//!
//! A check either comes back empty (all laws hold) or lists each violated
//! law instance with the cells that witness the failure.  Structural
//! problems (dangling ids, shape mismatches) are kept separate from law
//! failures so that a malformed table is never mistaken for a broken axiom.

use std::fmt;

/// One violated law instance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// Short machine-readable law name, e.g. `"pentagon"` or `"triangle-left"`.
    pub law: String,
    /// The witnessing cells, rendered as a deterministic string.
    pub witness: String,
}

/// Outcome of a checker run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    /// Malformed-data problems (unknown ids, shape mismatches).
    pub structural: Vec<String>,
    /// Violated law instances, canonically sorted.
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport::default()
    }

    pub fn is_empty(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }

    pub fn structural(&mut self, msg: impl Into<String>) {
        self.structural.push(msg.into());
    }

    pub fn violation(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }

    /// Merge another report into this one, prefixing its entries.
    pub fn absorb(&mut self, prefix: &str, other: LawReport) {
        for s in other.structural {
            self.structural.push(format!("{prefix}: {s}"));
        }
        for v in other.violations {
            self.violations.push(Violation {
                law: format!("{prefix}/{}", v.law),
                witness: v.witness,
            });
        }
    }

    /// Sort and deduplicate entries so reports are deterministic.
    pub fn canonicalize(mut self) -> Self {
        self.structural.sort();
        self.structural.dedup();
        self.violations.sort();
        self.violations.dedup();
        self
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        for s in &self.structural {
            writeln!(f, "structural: {s}")?;
        }
        for v in &self.violations {
            writeln!(f, "law {}: {}", v.law, v.witness)?;
        }
        Ok(())
    }
}

/// Errors raised by constructors (as opposed to law checkers).
#[derive(Debug, Clone, thiserror::Error)]
pub enum EngineError {
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("morphisms `{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("size guard exceeded: requested {requested} morphisms, limit {limit}")]
    SizeGuard { requested: usize, limit: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search space exhausted: {0}")]
    SearchBound(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
