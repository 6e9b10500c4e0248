use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution makes a denominator vanish identically")]
    SingularSubstitution,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("group model mismatch: `{0}` vs `{1}`")]
    ModelMismatch(String, String),
    #[error("matrix does not lie in the span of the algebra basis")]
    NotInSpan,
    #[error("no tangent vector realizes the requested matrix")]
    InconsistentTangent,
    #[error("no closed-form inverse for a vertical map of kind `{0}`")]
    NoClosedForm(String),
    #[error("expected kind `{expected}`, found `{found}`")]
    KindMismatch { expected: String, found: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("value space mismatch: {0}")]
    ValueSpaceMismatch(String),
    #[error("no rule declared for {0}")]
    MissingRule(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid definition: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
