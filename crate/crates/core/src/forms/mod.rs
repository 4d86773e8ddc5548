//! Balanced bilinear forms on modules with an algebra action: trace lifts,
//! splitting along idempotents, nondegeneracy and similitude factors.

mod lift;
mod module;
mod nondeg;

pub use lift::{algebra_form, evaluate_phi, lift_trace_form, split_form, trace_form, FormBundle, FormComponent};
pub use module::{check_adjoint, check_balanced, ActionModule};
pub use nondeg::{is_nondegenerate, similitude_factor, Level};
