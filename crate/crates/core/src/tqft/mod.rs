//! The exterior algebra `∧*H₁(Σ_g)` with its Lefschetz sl₂, the symplectic
//! action, the weight-space embeddings of `L^n`, the Lefschetz components and
//! the Alexander-type traces.

pub mod alexander;
pub mod exterior;
pub mod lefschetz;
pub mod tableau_rules;
pub mod symplectic;
pub mod weights;

pub use alexander::{alexander_trace, root_of_unity_check};
pub use exterior::ExteriorVector;
pub use lefschetz::{LefschetzBasis, ModSpace};
pub use symplectic::{SpToken, SpWord};
pub use weights::Weight;
