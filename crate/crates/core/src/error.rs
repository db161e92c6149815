use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("pole in x{var} is not isolated at the origin")]
    NonIsolatedPole { var: usize },

    #[error("residue order mismatch: {0}")]
    OrderMismatch(String),

    #[error("unsupported curve degree d = {0} (only d <= 3)")]
    UnsupportedDegree(u32),

    #[error("degenerate torus characters: {0}")]
    DegenerateCharacters(String),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("cache schema version {found} does not match supported version {expected}")]
    SchemaMismatch { found: u32, expected: u32 },

    #[error("corrupt cache file: {0}")]
    CorruptFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
