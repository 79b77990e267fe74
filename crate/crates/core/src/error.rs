use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular (|det| below tolerance)")]
    SingularMatrix,
    #[error("eigenvalue clusters overlap inconsistently: {0}")]
    ClusterAmbiguity(String),
    #[error("operator is not nilpotent on the given domain")]
    NotNilpotent,
    #[error("matrix is not symmetric at the given tolerance")]
    NotSymmetric,
    #[error("matrix is not hermitian at the given tolerance")]
    NotHermitian,
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("eigenvalue obstruction: H_(-delta) is nonzero, M + delta*id is not invertible")]
    EigenvalueObstruction,
    #[error("variant 3 requires all eigenvalues equal to delta")]
    VariantDomain,
    #[error("requested restricted form has empty domain")]
    EigenspaceEmpty,
    #[error("type parameters are not canonical: {0}")]
    NonCanonicalType(String),
    #[error("computed block data violates type invariants (tolerance failure): {0}")]
    InconsistentParity(String),
    #[error("mixed Hodge structure axiom fails at (k={k}, p={p})")]
    MhsViolation { k: i64, p: i64 },
    #[error("PMHS is not split: conj(I^pq) differs from I^qp")]
    NotSplit,
    #[error("inconsistent split-PMHS spec: {0}")]
    InconsistentSpec(String),
    #[error("eigenvalue off the unit circle where S^1 is required")]
    EigenvalueOffCircle,
    #[error("kappa^2 does not equal lambda at tolerance")]
    BadSquareRoot,
    #[error("nu is numerically singular (tolerance breakdown)")]
    SingularNu,
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(f64),
    #[error("quadrature did not converge (estimated error {0:.3e})")]
    QuadratureNonconvergence(f64),
    #[error("elementary-section exponents are incompatible for the pairing P")]
    IncompatibleExponents,
    #[error("pairing parity violates the sector split")]
    ParityMismatch,
    #[error("exponent cutoff too small for the requested V-graded piece")]
    TruncationInsufficient,
    #[error("sector supports of the two factors do not match")]
    SectorMismatch,
    #[error("TEZP data tiers are incompatible")]
    TierMismatch,
    #[error("kappa = 1/p + 1/q + 1/r must be < 1, got {0}")]
    HyperbolicityViolation(String),
    #[error("bad input: {0}")]
    BadInput(String),
}
