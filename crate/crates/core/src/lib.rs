//! Exact computations around two-row Specht lattices over `F_p`: the
//! Jantzen-type resolutions by `E`-powers, the Kleshchev–Sheth composition
//! factors, dimension and fusion identities, the Lefschetz decomposition of the
//! exterior algebra of a surface and its Johnson–Morita extension.

pub mod arith;
pub mod error;
pub mod fusion;
pub mod jm;
pub mod ks;
pub mod report;
pub mod resolution;
pub mod specht;
pub mod tensor;
pub mod tqft;

pub use error::{Error, Result};
