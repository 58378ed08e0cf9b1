use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("ring error: {0}")]
    Ring(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dim(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("ill-defined morphism: {0}")]
    IllDefined(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("aid mismatch: {0}")]
    AidMismatch(String),

    #[error("lifting condition failed: {0}")]
    Lift(String),

    #[error("not an epimorphism: {0}")]
    NotEpi(String),

    #[error("invalid filtration system: {0}")]
    Filtration(String),

    #[error("not a complex: {0}")]
    NotComplex(String),

    #[error("anticommutativity violation: {0}")]
    Anticommutativity(String),

    #[error("unsupported functor pair: {0}")]
    FunctorPair(String),

    #[error("{0}")]
    Math(String),
}
