//! Exact computations with decomposition posets, Γ-set filtrations and
//! simplicial homology over finite fields and finite sets.

mod bits;
pub mod addcat;
pub mod complex;
pub mod decomp;
pub mod error;
pub mod field;
pub mod gamma;
pub mod homology;
pub mod linalg;
pub mod oracles;
pub mod poset;
pub mod rognes;
pub mod sset;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use field::FiniteField;
pub use poset::{Chain, Poset, Side};
