//! Contract violations shared across the analysis modules.

use thiserror::Error;

/// Error for inputs that break a documented precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    /// HTTP status outside the valid 100..=599 range.
    #[error("status {0} outside 100..=599")]
    StatusOutOfRange(u16),

    /// A ratio over zero hits is undefined; rows are only built for keys
    /// with at least one hit.
    #[error("hits must be >= 1")]
    ZeroHits,

    #[error("incomplete count {incomplete} exceeds hits {hits}")]
    IncompleteExceedsHits { hits: u64, incomplete: u64 },

    /// min_support 0 would make every itemset frequent.
    #[error("minimum support must be >= 1")]
    ZeroMinSupport,

    /// Candidate generation needs all input itemsets at the same level.
    #[error("frequent itemsets of mixed length (expected {expected}, found {found})")]
    MixedItemsetLengths { expected: usize, found: usize },

    /// Itemsets must be strictly sorted by item id.
    #[error("itemset is not strictly sorted")]
    UnsortedItemset,

    /// Rule generation found a frequent itemset whose subset has no
    /// recorded support; downward closure guarantees this never happens
    /// for output produced by the miner itself.
    #[error("no support recorded for a subset of a frequent itemset")]
    ClosureViolation,

    /// Two classifier extension sets claim the same extension.
    #[error("extension {extension:?} listed for both {first} and {second}")]
    OverlappingExtensions {
        extension: String,
        first: &'static str,
        second: &'static str,
    },
}
