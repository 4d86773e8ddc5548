//! Galois-ring towers over `Z/l^N`: arithmetic, Frobenius, traces, dual
//! bases, and the CRT splitting of etale algebras.

pub mod etale;
pub mod factor;
pub mod galois;
mod modulus;
pub mod poly;
pub mod quotient;

pub use etale::EtaleAlgebra;
pub use galois::{ExtensionBasis, GaloisRing};
pub use modulus::{is_prime, Modulus, MAX_MODULUS};
pub use quotient::{Elem, QuotientRing};
