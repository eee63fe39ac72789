use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("reversal window violated: exponent {exponent} outside [0, {window}]")]
    ReversalWindow { exponent: i64, window: i64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed polynomial text {0:?}")]
    Parse(String),

    #[error("support set has repeated element {0}")]
    DuplicateElement(u32),

    #[error("support set must be nonempty")]
    EmptySet,

    #[error("family sets have unequal cardinalities ({0} vs {1})")]
    UnequalCardinality(usize, usize),

    #[error("family must contain at least one set")]
    EmptyFamily,

    #[error("input is already 0-based or malformed (found element 0)")]
    AlreadyZeroBased,

    #[error("vacuous parity row {0}: row set meets no column set")]
    VacuousRow(usize),

    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("reflection bound {bound} does not match family scope {scope}")]
    ReflectionBound { bound: u32, scope: u32 },

    #[error("zero matrix has no memory")]
    ZeroMatrix,

    #[error("matrix is not in systematic 1 x n form [x_1, ..., x_(n-1), 1]")]
    NotSystematic,

    #[error("window too large for exact oracle ({bits} information bits, limit {limit})")]
    WindowTooLarge { bits: usize, limit: usize },

    #[error("exact search guard violated: {0}")]
    SearchGuard(String),

    #[error("certificate requires CSOC")]
    NotCsoc,

    #[error("exact search found weight {found} below the certified w+1 = {certified}")]
    CertificateContradicted { found: u32, certified: u32 },

    #[error("cannot report parameters for non-commuting pair")]
    NotCommuting,

    #[error("symplectic sum needs equal X and Z row counts (got {0} and {1})")]
    AsymmetricRows(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
