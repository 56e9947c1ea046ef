//! Density estimation along Følner sequences and largeness diagnostics for
//! subsets of countably infinite semigroups.
//!
//! The library is organized around a small number of ingredients:
//!
//! - [`GroupContext`]: a concrete semigroup ((ℕ,+), (ℤ,+), (ℤᵈ,+), the
//!   discrete Heisenberg group, free words) together with an element
//!   encoding and a built-in Følner window sequence where one exists.
//! - [`SetOracle`]: a pure membership predicate for a subset, optionally
//!   carrying a closed-form density.
//! - [`folner`]: exact window counting, density reports, and Følner defect
//!   measurements.
//! - [`constructions`]: membership oracles for concrete families that have
//!   positive density but are not piecewise syndetic — B-free integers and
//!   their exponent-pattern and multidimensional variants, Straus sets,
//!   irrational-rotation visit sets (including fat-Cantor targets), and
//!   anti-recurrence sets.
//! - [`ie`]: inclusion–exclusion-good family checks that back the product
//!   formulas for the densities above.
//! - [`detectors`]: finite-window evidence procedures for thickness,
//!   syndeticity and piecewise syndeticity, plus exact Chinese-remainder
//!   witnesses for gaps.
//! - [`sl2`]: entry-bounded balls in SL₂(ℤ), congruence subgroup counting
//!   and the constructive CRT splitting of SL₂(ℤ) across coprime moduli.
//! - [`symbolic`]: the shift system on {0,1}^G — cylinder matching,
//!   disjunctive and extremely-non-averageable generators, word frequency
//!   statistics, and orbit-closure window queries.
//!
//! Everything is computed by exact integer counting over explicit finite
//! windows; floating point enters only when a ratio is finally reported.

pub mod circle;
pub mod constructions;
pub mod context;
pub mod detectors;
pub mod error;
pub mod folner;
pub mod ie;
pub mod oracle;
pub mod prng;
pub mod sl2;
pub mod symbolic;

pub use context::{Element, GroupContext};
pub use error::{Error, Result};
pub use folner::{DensityReport, FolnerWindow};
pub use oracle::SetOracle;
