use thiserror::Error;

use crate::classify::Bucket;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial of degree {got:?} is too small, at least {min} required")]
    DegreeTooSmall { min: u32, got: Option<u32> },
    #[error("product does not fit in a {bits}-bit word")]
    WordOverflow { bits: u32 },
    #[error("constant term must be 1")]
    ZeroConstantTerm,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("degree {0} must be odd")]
    EvenDegree(u32),
    #[error("degree {0} must be even")]
    OddDegree(u32),
    #[error("bucket {found} is not accepted here")]
    WrongBucket { found: Bucket },
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("polynomial is not self-reciprocal")]
    NotSelfReciprocal,
    #[error("polynomial is not a Q-transform image")]
    NotQImage,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("residue of degree {degree} is out of range for a degree-{n} field")]
    ResidueOutOfRange { degree: u32, n: u32 },
    #[error("degree {n} is outside the supported range {min}..={max}")]
    DegreeOutOfRange { n: u32, min: u32, max: u32 },
    #[error("integer overflow while evaluating a count at n = {0}")]
    CountOverflow(u32),
    #[error("argument must be positive")]
    NonPositive,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}
