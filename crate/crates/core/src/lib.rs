//! Web access-log analysis: CLF/Combined parsing, request classification,
//! traffic statistics, and association-rule mining over (ip, url, path)
//! attributes.
//!
//! The crate is organised as a pipeline:
//!
//! * [`parser`] turns raw log lines into [`parser::LogRecord`]s,
//! * [`classify`] maps records onto outcomes, resource classes and
//!   browser families,
//! * [`stats`] aggregates the general and access statistics,
//! * [`mining`] runs the level-wise frequent-itemset search, the grouped
//!   co-relation variant, and rule generation,
//! * [`report`] renders everything as text, CSV or JSON.
//!
//! All counting is done in integer arithmetic. Ratios (success fractions,
//! rule confidences) are generic over [`Scalar`], so the same code runs on
//! `f64` for quick approximations and on [`Exact`] when the exact value
//! matters. Report rendering always derives its decimal strings from the
//! underlying counts, never from a float.

pub mod classify;
pub mod error;
pub mod mining;
pub mod parser;
pub mod report;
pub mod scalar;
pub mod stats;

pub use error::DomainError;
pub use scalar::Scalar;

/// Exact rational over machine-word counts; the canonical scalar for
/// report math.
pub type Exact = num_rational::Ratio<u64>;

/// Shortest-path floating approximation, for callers that do not need
/// exactness.
pub type Approx = f64;
