//! Affine equivalences and symmetries of parametric curves via differential invariants.

pub mod curve;
pub mod equivalence;
pub mod exact;
pub mod invariants;
pub mod invgen;
pub mod io;
pub mod moebius;

mod error;
pub use error::Error;
