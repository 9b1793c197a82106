//! Möbius transformations and their extraction from the invariant conditions.

pub mod conditions;
pub mod extract;
pub mod map;

pub use conditions::{build_conditions, common_factor, BivariateCondition};
pub use extract::{candidates_from_values, extract_affine_exp, extract_moebius_factors, ExpCandidate, ExpShift};
pub use map::MoebiusMap;
