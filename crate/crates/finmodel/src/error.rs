use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid reflexive graph: {0}")]
    Graph(String),
    #[error("invalid displayed reflexive graph: {0}")]
    Disp(String),
    #[error("invalid lens: {0}")]
    Lens(String),
    #[error("invalid fibration witness: {0}")]
    Witness(String),
    #[error("{kind}: {message}")]
    Shape { kind: &'static str, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;
