use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps to a stable machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("substituted degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: u128, cap: usize },

    #[error("parameter field input is not supported here: {0}")]
    ParameterField(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOperator(_) => "invalid-operator",
            Error::DegreeCap { .. } => "degree-cap",
            Error::ParameterField(_) => "parameter-field",
            Error::Syntax { .. } => "syntax",
            Error::DivisionByZero => "division-by-zero",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Internal(_) => "internal",
        }
    }

    /// Resource errors (as opposed to bad input).
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::DegreeCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
