//! Coefficient words of binary cyclotomic polynomials `Φ_pq`.
//!
//! The word of `Φ_pq` (coefficients in ascending degree) is assembled from
//! `p - 1` basic words of length `p` and their fractional powers instead of
//! expanding the polynomial. On top of that the crate computes gap profiles
//! (first gap, second gap, per-length counts and positions) and checks the
//! known closed forms for them. The [`oracle`] module recomputes `Φ_pq` by
//! exact polynomial division and serves as ground truth.

pub mod basicwords;
pub mod cyclotomic;
pub mod oracle;
pub mod words;

pub use basicwords::{BasicWordFamily, PairError, PrimePair, ResidueClass};
pub use cyclotomic::{CyclotomicWord, GapProfile, TheoremReport};
pub use oracle::{IntPolynomial, OracleError};
pub use words::{GapDecomposition, Gapset, TernaryWord, WordError};
