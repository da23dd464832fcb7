use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgkError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not SG-closed: element {element} has component {component} outside the subspace")]
    NotSgClosed { element: String, component: String },
    #[error("not action-closed: {generator} * {element} leaves the subspace")]
    NotActionClosed { generator: String, element: String },
    #[error("{element} is not normal: no twist found for generator {generator}")]
    NotNormal { element: String, generator: String },
    #[error("{element} is a zero divisor: {element} * ({witness}) = 0")]
    ZeroDivisor { element: String, witness: String },
    #[error("Ore set {0} has not been verified")]
    OreNotVerified(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("missing object: {0}")]
    Missing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
