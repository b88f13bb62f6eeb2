use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("splitting field degree {0} exceeds the cap {1}")]
    DegreeCapExceeded(usize, usize),
    #[error("field automorphisms are unavailable")]
    NotGalois,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("composition hits a pole of the outer function")]
    ComposePoleCollision,
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}
