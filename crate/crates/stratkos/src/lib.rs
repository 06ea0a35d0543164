//! Exact computations with finite-dimensional graded quiver algebras.
//!
//! Algebras come from quiver presentations (completed by overlap rewriting) or from
//! raw structure constants. On top of that sit modules, minimal graded resolutions,
//! Ext groups with Yoneda products, Koszulity tests, standard modules for linear
//! orders, order enumeration and finite EI categories.

pub mod algebra;
pub mod allorders;
pub mod cli;
pub mod eicat;
pub mod error;
pub mod exactlin;
pub mod homological;
pub mod repmod;
pub mod stratification;

pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Scalar, Subspace};
