//! Exact computational algebra over finite-precision `l`-adic rings.
//!
//! * [`ptower`]: Galois rings `GR(l^N, f)`, Frobenius, traces, trace-dual
//!   bases, and CRT splittings of unramified etale algebras.
//! * [`matring`]: dense matrices with determinant, inverse and solving.
//! * [`weilres`]: the block-matrix Weil restriction embedding
//!   `GL_r(GR) -> GL_rn(Z/l^N)` and restriction of matrix Lie algebras.
//! * [`forms`]: balanced bilinear forms, their trace lifts and their
//!   splitting along idempotents.
//! * [`sympgrp`]: symplectic and similitude groups, exhaustive closure,
//!   type II splittings and commutants.
//! * [`surject`]: CRT product and reduction-lifting checks for symplectic
//!   groups.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod forms;
pub mod matring;
pub mod ptower;
pub mod random;
pub mod surject;
pub mod sympgrp;
pub mod weilres;

pub use error::{Error, Result};
pub use forms::{ActionModule, FormBundle, FormComponent};
pub use matring::Matrix;
pub use ptower::{Elem, EtaleAlgebra, ExtensionBasis, GaloisRing, Modulus, QuotientRing};
pub use surject::{CommutatorReport, CrtReport, KernelReport, LiftingReport};
pub use sympgrp::{CommutantResult, GspDecomposition, SubgroupClosure, SymplecticGroupSpec, TypeIISplit};
pub use weilres::{MatrixLieAlgebra, RestrictionData};
