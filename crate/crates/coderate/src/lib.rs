//! Rate-versus-minimum-distance analysis for binary codes.
//!
//! Three pieces:
//!
//! - [`bounds`]: the classical Gilbert-Varshamov, Hamming, Plotkin and MRRW
//!   bounds, finite-length and asymptotic, plus the binary-entropy and
//!   exact binomial-sum kernels they need.
//! - [`approx`]: an invertible closed-form approximation of the maximum
//!   achievable rate at a given normalized distance — a per-length
//!   quadratic segment joined smoothly to the Plotkin expression — and its
//!   inverse, which predicts the minimum distance d(n, k) directly.
//! - [`codetable`]: ingestion of (n, k, d) tables of best-known codes,
//!   accuracy reports of the approximation against the exactly-known
//!   entries, and a brute-force minimum-distance oracle for verifying
//!   fixture generator matrices.

pub mod approx;
pub mod bounds;
pub mod codetable;

pub use approx::{ApproxError, CodeParams, InverseBranch, QuadraticParams};
pub use bounds::{BoundError, BoundFamily, BoundKind, NormalizedDistance, Rate, Regime};
pub use codetable::{CodeTableEntry, GeneratorMatrix, TableError, ValidationReport};
