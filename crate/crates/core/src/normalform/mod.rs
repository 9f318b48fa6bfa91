//! Rewriting to normal form, and ideal membership.
//!
//! Relations are oriented by the presentation's monomial order. Under the
//! PBW order, relations whose leading word is longer than two letters act
//! by divisibility on sorted words (this is how the q-determinant enters).
//! After construction the engine checks all critical pairs; when they
//! resolve (and any divisibility relation is central) normal forms decide
//! membership both ways. Otherwise a nonzero normal form falls back to the
//! bounded linear-algebra oracle.

mod agreement;
mod engine;
mod oracle;
mod tensor;
mod trace;

pub use agreement::{oracle_agreement, random_elements, Agreement};
pub use engine::{AlgEngine, DivRule, Engine, Rule, SymbolicEngine, SystemStatus};
pub use oracle::{block_dimension, split_by_degree, words_of, BoundedSpan, Echelon};
pub use trace::{ReductionTrace, TraceStep};

/// Resource caps. Exceeding one yields `Error::ResourceCap`, reported as
/// "undecided".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of terms in an intermediate element.
    pub max_terms: Option<usize>,
    /// Largest (degree, length) block the oracle will build.
    pub max_dim: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: None, max_dim: Some(40_000) }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { max_terms: Some(cap), max_dim: Some(cap) }
    }
}

#[cfg(test)]
mod tests;
