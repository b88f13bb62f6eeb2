use hyperint_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperintError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the 1-form is not closed")]
    NotClosed,
    #[error("dH/H is not closed")]
    EtaNotClosed,
    #[error("H·ω is not closed")]
    NotClosedTwisted,
    #[error("non-constant residue: the input form cannot be closed")]
    NonConstantResidue,
    #[error("not a rational function of F")]
    NotAFunctionOfF,
    #[error("F is constant")]
    ConstantF,
    #[error("H is algebraic")]
    AlgebraicH,
    #[error("degree bound exhausted ({0})")]
    DegreeBoundExceeded(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("pole outside the allowed support")]
    PoleOutsideSupport,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no suitable homography found")]
    NoHomographyFound,
    #[error("no pole available to cancel the residue at infinity")]
    NoShiftPoleAvailable,
    #[error("first integral is degenerate: {0}")]
    FirstIntegralDegenerate(String),
}

pub type Result<T> = std::result::Result<T, HyperintError>;
