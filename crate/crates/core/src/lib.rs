//! Exact verification engine for quiver linking and unlinking.
//!
//! The crate builds the unlinked quiver `Q^U`, the linked quiver `Q^L` and the
//! two-cycle quiver `Q^T` of a quiver `Q`, and checks the generating-series
//! identities relating their cohomological Hall algebras coefficient by
//! coefficient. Coefficients live in the field of rational functions in the
//! half-power variable `s` with `s^2 = q` ([`QHalfRational`]), so every
//! comparison is exact.
//!
//! Module map:
//! - [`quiver`]: quivers, dimension vectors, Euler pairing
//! - [`qcoef`]: rational functions in `s`, q-Pochhammer symbols, Laurent expansion
//! - [`series`]: truncated generating series and substitutions
//! - [`mutations`]: unlinking, linking and two-cycle constructions
//! - [`strata`]: rank strata and the ideal filtration
//! - [`framed`]: framed moduli, Grassmannian complexes, linking identity
//! - [`document`] and [`cli`]: the quiver file format and command-line front end

pub mod cli;
pub mod document;
pub mod error;
pub mod framed;
pub mod mutations;
pub mod qcoef;
pub mod quiver;
pub mod series;
pub mod strata;
pub mod verdict;

pub use error::{Error, Result};
pub use mutations::{add_twocycle, link, unlink, MutationKind, MutationResult};
pub use qcoef::QHalfRational;
pub use quiver::{DimVector, Quiver, TwoCyclePointer, VertexPairPointer};
pub use series::{MotivicSeries, TruncationPolicy};
pub use verdict::{Comparison, Verdict};
