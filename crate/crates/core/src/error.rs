use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("malformed category data: {0}")]
    Malformed(String),
    #[error("composite {g} o {f} is not defined in the composition table")]
    MissingComposite { g: String, f: String },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("enrichment mismatch: {0}")]
    EnrichmentMismatch(String),
    #[error("enumeration refused: estimated {estimate} candidates exceeds limit {limit}")]
    LimitExceeded { estimate: u128, limit: u128 },
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("colimit oracle refused: {0}")]
    OracleRefused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
