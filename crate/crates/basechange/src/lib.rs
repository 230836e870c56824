//! A finite-instance engine for symmetric monoidal closed categories,
//! categories enriched in them, change of base, autoenrichment, the
//! Grothendieck-style total 2-category of enriched monoidal categories,
//! and enriched adjunctions.
//!
//! Everything here operates on explicit finite data: categories are
//! composition tables, functors are lookup tables, and every law is
//! checked exhaustively over the (small) instances at hand.

pub mod adjoint;
pub mod autoenrich;
pub mod chbase;
pub mod enriched;
pub mod fincat;
pub mod groth;
pub mod inst;
pub mod instances;
pub(crate) mod memo;
pub mod report;
pub mod smcc;
pub mod suites;

/// Resource bounds for derived constructions.
///
/// Products, tensors and pushforwards can blow up combinatorially, so every
/// constructor that materializes a new category respects these limits.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum number of morphisms a materialized category may have.
    pub max_morphisms: usize,
    /// Cap on candidate component families during exhaustive enumeration.
    pub max_candidates: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_morphisms: 20_000,
            max_candidates: 1_000_000,
        }
    }
}
