//! Generation of the Möbius-commuting invariants and the combinatorics behind them.

pub mod cache;
pub mod combinat;
pub mod identities;
pub mod mdet;
pub mod templates;

pub use cache::TemplateCache;
pub use mdet::{shift_identity_holds, m_determinant, MDeterminantTable};
pub use templates::{generate_templates, install_templates, templates, InvariantTemplate};
