//! Finite-level checks on symplectic groups: the CRT product decomposition
//! over an etale algebra, lifting of generating sets from `l` to `l^N`, and
//! derived subgroups of similitude groups.

mod commutator;
mod crt;
mod lifting;

pub use commutator::{commutator_image_check, derived_subgroup, CommutatorReport};
pub use crt::{crt_product_check, project_matrix, reconstruct_matrix, CrtReport};
pub use lifting::{
    lift_symplectic, lifting_check, random_lift, random_lift_trials, reduction_kernel, KernelReport, LiftTrials,
    LiftingReport,
};
