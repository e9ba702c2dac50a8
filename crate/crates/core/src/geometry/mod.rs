//! Finite geometry: `GF(q)`, `GF(q²)`, `PG(2, q²)`, the Hermitian unital and
//! its secant-line incidence graph.

pub mod field;
pub mod incidence;
pub mod plane;
pub mod unital;
pub mod verify;

pub use field::{build_field, build_field_with_ceiling, hermitian_norm, Elem, FieldCtx, Reduction};
pub use incidence::BipartiteIncidence;
pub use plane::{ProjLine, ProjPoint};
pub use unital::{
    build_incidence, hermitian_points, parse_incidence_text, secant_lines, write_incidence_text,
    LineClassification, UnitalIncidence,
};
pub use verify::{verify_unital, OnanMethod, OnanStatus, SearchBudget, VerificationReport};

use crate::Result;

/// Builds `F` for prime `q` in one call.
pub fn unital_incidence(q: u64) -> Result<UnitalIncidence> {
    build_incidence(&build_field(q)?)
}
