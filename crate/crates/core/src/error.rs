use thiserror::Error;

/// Errors raised by the arithmetic and group kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("polynomial {0} is reducible modulo the residue characteristic")]
    NotIrreducible(String),
    #[error("trace Gram matrix is singular modulo l; basis is ramified or degenerate")]
    RamifiedOrDegenerate,
    #[error("l divides the discriminant of {0}: repeated factor modulo l")]
    RamifiedPrime(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("matrix is not invertible; determinant {det} is not a unit")]
    NotInvertible { det: String },
    #[error("linear system is singular over a non-field ring")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("operation needs a field of scalars; {0} is not one")]
    NotAField(String),
    #[error("matrix is not defined over the extension ring {0}")]
    NotOverExtension(String),
    #[error("matrix is not in the image of the restriction map: {0}")]
    NotInImage(String),
    #[error("bilinear form is not balanced for the algebra action")]
    NotBalanced,
    #[error("no scalar similitude factor exists for this matrix")]
    NotSimilitude,
    #[error("algebra relations fail: {0}")]
    BadAlgebra(String),
    #[error("2 is not invertible in the coefficient ring")]
    EvenCharacteristic,
    #[error("enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("l = {0} is below the hypothesis l >= 5 of the lifting criterion")]
    SmallPrime(u64),
    #[error("matrix is not a member of the group: {0}")]
    NotInGroup(String),
    #[error("module is not free over the algebra component: {0}")]
    NotFree(String),
    #[error("trace lift disagrees with the solution of its defining system")]
    LiftMismatch,
    #[error("input too large for exhaustive methods: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
