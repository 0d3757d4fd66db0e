//! Exact analysis of binary ±1 sequences and their aperiodic autocorrelations.
//!
//! The crate is organised bottom-up:
//!
//! * [`seqcore`] holds [`BinarySequence`], the four-element `(a, b)` symmetry
//!   group, canonical forms and run decomposition.
//! * [`correlation`] computes aperiodic and periodic autocorrelations, peak
//!   sidelobe level and the exact merit factor.
//! * [`barker`] is the Barker predicate together with the skew-symmetry,
//!   doubling and congruence identities every odd Barker sequence satisfies.
//! * [`oddproof`] evaluates the run-structure bounds, the telescoping
//!   difference identity and the case classifier that together rule out odd
//!   Barker sequences longer than 13.
//! * [`search`] enumerates Barker and minimum-PSL sequences with optional
//!   pruning and data-parallel subtasks.
//!
//! All math-facing indices are 1-based: `A(1)` is the first entry.

pub mod barker;
pub mod catalogue;
pub mod correlation;
mod error;
pub mod oddproof;
pub mod search;
pub mod seqcore;
mod sign;

pub use barker::{LemmaReport, Verdict};
pub use correlation::{CorrelationProfile, MeritFactor};
pub use error::{Error, Result};
pub use oddproof::{CaseId, CaseVerdict, Lemma3Breakdown};
pub use search::{SearchMode, SearchOptions, SearchOutcome, Strategy};
pub use seqcore::{BinarySequence, RunProfile, TransformParams};
