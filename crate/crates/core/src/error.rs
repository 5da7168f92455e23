use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid support (s = {s}, t = {t}): {reason}")]
    InvalidSupport { s: u32, t: u32, reason: &'static str },

    #[error("constant coefficient q must be nonzero")]
    ZeroConstantTerm,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("root iteration did not converge after {iterations} steps (max residual {max_residual:e})")]
    NonConvergence { iterations: usize, max_residual: f64 },

    #[error("no triangle with the given side lengths: the trinomial is lopsided at this radius")]
    NotATriangle,

    #[error("argument of a zero coefficient is undefined")]
    UndefinedArgument,

    #[error("middle coefficient p must be nonzero")]
    ZeroMiddleCoefficient,

    #[error("trinomials have different supports")]
    SupportMismatch,

    #[error("coefficient norms differ")]
    NormMismatch,

    #[error("evaluation point coincides with a polytope vertex")]
    PoleAtVertex,

    #[error("insufficient sampling: {0}")]
    InsufficientSampling(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
