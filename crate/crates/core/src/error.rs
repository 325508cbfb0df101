use crate::parse::ParseError;

/// Errors raised by the kernel. Variants that describe a mathematical
/// failure of the input (as opposed to a malformed request) carry enough
/// context to locate the offending instance.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed group table: {0}")]
    BadTable(String),
    #[error("table is not a Latin square (repeated entry in {0})")]
    NotLatinSquare(String),
    #[error("group has no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("group law is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("complement of the zero set is not a union of left cosets: {0}")]
    NotAUnionOfCosets(String),
    #[error("sigma is not a homomorphism into the nonzero scalars: {0}")]
    SigmaNotHomomorphism(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("1-cochain must vanish at the identity")]
    UnnormalizedCochain,
    #[error("no trivializing cochain found")]
    NoSolution,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not of degree e")]
    NotDegreeE,
    #[error("algebra is not associative at basis triple ({0}, {1}, {2})")]
    AlgebraNotAssociative(usize, usize, usize),
    #[error("product of basis elements {0} and {1} leaves the graded component")]
    GradingViolated(usize, usize),
    #[error("block for degree {0} is not invertible over Q[T]")]
    NotInvertibleOverPolyRing(String),
    #[error("cocycles are not cohomologous through the given cochain: {0}")]
    CocyclesNotCohomologous(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("algebra is not semisimple (radical has dimension {0})")]
    NotSemisimple(usize),
    #[error("splitting requires an extension of Q: {0}")]
    SplitFieldRequired(String),
    #[error("not graded irreducible: {0}")]
    NotIrreducible(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("closure did not stabilize within {0} rounds")]
    ClosureBoundExceeded(usize),
    #[error("subspace is not closed under the product: {0}")]
    NotClosed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
