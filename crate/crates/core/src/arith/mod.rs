//! Exact scalars: checked integers, `F_p`, Laurent polynomials, cyclotomic
//! integers and dense matrices over `Z` and `F_p`.

pub mod checked;
pub mod cyclotomic;
pub mod fp;
pub mod laurent;
pub mod matrix;
pub mod quantum;

pub use cyclotomic::{cyclotomic_eval, CyclotomicElem};
pub use fp::FpScalar;
pub use laurent::LaurentInt;
pub use matrix::{FpMatrix, IntMatrix};
pub use quantum::{quantum_integer, Ring};
