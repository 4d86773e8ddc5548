//! Weil restriction of scalars for matrix groups and matrix Lie algebras.

mod lie;
mod restriction;

pub use lie::{derived_algebra, MatrixLieAlgebra, Scalars};
pub use restriction::RestrictionData;
