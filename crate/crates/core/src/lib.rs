//! Computational kernel for positively semi-graded rings given by PBW
//! rewriting presentations.
//!
//! Everything is exact and happens inside a finite window of degrees
//! `0..=D`. Results that depend on products leaving the window carry a
//! truncation flag instead of silently claiming completeness.

pub mod checkers;
pub mod error;
pub mod examples;
pub mod field;
pub mod format;
pub mod freealg;
pub mod functors;
pub mod glin;
pub mod report;
pub mod sgcore;
pub mod sgmod;

pub use error::SgkError;
pub use field::{Field, Fp};
pub use freealg::{Element, GeneratorTable, Monomial, Presentation, RewriteRule, Word, WordCombination};
pub use glin::{GradedMap, GradedSubspace, Grading, Matrix, Subspace};
pub use sgcore::{QuotientRing, SgIdeal, SgRing};
pub use sgmod::SgModule;

/// Default coefficient field.
pub type Rational = num_rational::BigRational;
pub type QPresentation = Presentation<Rational>;
pub type QRing = SgRing<Rational>;
pub type QModule = SgModule<Rational>;
pub type QElement = Element<Rational>;
pub type QSubspace = GradedSubspace<Rational>;

/// Default window bound.
pub const DEFAULT_BOUND: usize = 8;
