use deltasigma::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at offset {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String> },
    #[error("symbol {symbol} is not allowed in {context}")]
    WrongSymbolForContext { symbol: String, context: String },
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("certificate failed re-verification: {0}")]
    VerifyFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax_error",
            CliError::WrongSymbolForContext { .. } => "wrong_symbol_for_context",
            CliError::InvalidExpression(_) => "invalid_expression",
            CliError::Usage(_) => "usage",
            CliError::VerifyFailed(_) => "verification_failed",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e {
                CoreError::ZeroPolynomial => "zero_polynomial",
                CoreError::DivisionByZero => "division_by_zero",
                CoreError::InvalidQ(_) => "invalid_q",
                CoreError::ZeroOperator => "zero_operator",
                CoreError::CyclicVectorFailure(_) => "cyclic_vector_failure",
                CoreError::UnsupportedOrder { .. } => "unsupported_order",
                CoreError::SingularPoint => "singular_point",
                CoreError::UnsupportedContext { .. } => "unsupported_context",
                CoreError::EmptyInput => "empty_input",
                CoreError::NonSquare => "non_square",
                CoreError::DimensionMismatch(_) => "dimension_mismatch",
                CoreError::BothZero => "both_zero",
                CoreError::InvalidLeadingExponent => "invalid_leading_exponent",
                CoreError::NotPrime(_) => "not_prime",
                CoreError::FieldNotLinearlySigmaClosed { .. } => "field_not_linearly_sigma_closed",
                CoreError::NonMonic => "non_monic",
                CoreError::NotPerfectlyReduced => "not_perfectly_reduced",
            },
        }
    }

    /// 3 for a failed re-verification, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 3,
            _ => 1,
        }
    }
}
