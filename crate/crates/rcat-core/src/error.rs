use thiserror::Error;

pub type Result<T> = std::result::Result<T, CatError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphisms are not parallel: {0}")]
    NotParallel(String),
    #[error("size cap exceeded: {count} morphisms > cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("no restriction zero: {0}")]
    NoZero(String),
    #[error("no coproduct for ({0}, {1})")]
    NoCoproduct(String, String),
    #[error("no decision for row {0}")]
    NoDecision(usize),
    #[error("missing binary decision at step {0}")]
    MissingBinaryDecision(usize),
    #[error("invalid row witness for row {0}")]
    InvalidWitness(usize),
    #[error("no ordinary products: {0}")]
    NoProducts(String),
    #[error("idempotent does not split: {0}")]
    NotSplit(String),
    #[error("no limit in the total subcategory: {0}")]
    NoTotalLimit(String),
    #[error("object is not separable: {0}")]
    NotSeparable(String),
    #[error("invalid distributive data: {0}")]
    InvalidDistributiveData(String),
    #[error("non-strict monoidal data: {0}")]
    NonStrict(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}
