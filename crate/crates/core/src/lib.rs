//! Exact, valuation-based verification of divisibility properties of
//! binomial products and generalized Catalan numbers.
//!
//! Values of factorial ratios are never built just to test divisibility:
//! every decision goes through p-adic valuations computed with Legendre's
//! formula. Big integers appear only when a value is explicitly requested.

pub mod conjectures;
pub mod error;
pub mod factorial_ratio;
pub mod inequalities;
pub mod primes;
mod scan;
pub mod sequences;
pub mod theorems;
pub mod valuation;

pub use conjectures::{ConjectureId, FSearchResult, FStatus, ScanReport};
pub use error::{Error, Result};
pub use factorial_ratio::{FactorialRatio, Integrality, LinearForm, Parity, Sign, ValuationProfile};

pub use inequalities::{DefectReport, InequalityTheorem, LemmaReport, ResidueScan};
pub use sequences::SequenceId;
pub use theorems::{Outcome, SweepBounds, SweepReport, TheoremId, Verdict};
pub use valuation::{DigitExpansion, Valuation};

pub use num_bigint::BigUint;
