//! Symplectic and similitude groups over finite rings.

mod closure;
mod commutant;
mod gsp;
mod spec;
mod typeii;

pub use closure::{closure, SubgroupClosure, DEFAULT_CAP};
pub use commutant::{commutant, commutant_algebra, CommutantMethod, CommutantResult};
pub use gsp::{gsp_decomposition_check, GspDecomposition};
pub use spec::{standard_form, unit_group_generators, SymplecticGroupSpec};
pub use typeii::{type_ii_split, TypeIIModel, TypeIISplit};
