use thiserror::Error;

/// Every failure the kernel can report.
///
/// Variants are grouped by how the command line front end treats them:
/// [`Error::Syntax`], [`Error::Config`] and [`Error::Sort`] are input errors
/// (exit code 2); everything else is a domain outcome (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no preimage: {0}")]
    NoPreimage(String),
    #[error("no solution found for the linear difference equation")]
    NoSolutionFound,
    #[error("all coefficients are zero")]
    AllZero,
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("input polynomial is constant")]
    ConstantInput,
    #[error("zero divisor: no leading term is determined")]
    ZeroDivisor,
    #[error("negative valuation")]
    NegativeValuation,
    #[error("zero input")]
    ZeroInput,
    #[error("inverse has infinite support below the requested order")]
    InfiniteSupport,
    #[error("not in sigma-henselian configuration")]
    NotInConfiguration,
    #[error("two distinct slopes verified: {0} and {1}")]
    AmbiguousGamma(String, String),
    #[error("residue step unsolvable: {0}")]
    ResidueStepUnsolvable(String),
    #[error("no convergence after {iterations} iterations (last v(p(a)) = {last_value})")]
    NonTermination {
        iterations: usize,
        last_value: String,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("sum is not well defined")]
    NotWellDefined,
    #[error("prefix too short: need at least 3 terms, got {0}")]
    TooShort(usize),
    #[error("unsupported carrier: {0}")]
    UnsupportedCarrier(String),
    #[error("element not in instance {instance}: {element}")]
    NotInInstance { instance: String, element: String },
    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NoPreimage(_) => "NoPreimage",
            Error::NoSolutionFound => "NoSolutionFound",
            Error::AllZero => "AllZero",
            Error::PrecisionLoss(_) => "PrecisionLoss",
            Error::ConstantInput => "ConstantInput",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::NegativeValuation => "NegativeValuation",
            Error::ZeroInput => "ZeroInput",
            Error::InfiniteSupport => "InfiniteSupport",
            Error::NotInConfiguration => "NotInConfiguration",
            Error::AmbiguousGamma(..) => "AmbiguousGamma",
            Error::ResidueStepUnsolvable(_) => "ResidueStepUnsolvable",
            Error::NonTermination { .. } => "NonTermination",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::NotWellDefined => "NotWellDefined",
            Error::TooShort(_) => "TooShort",
            Error::UnsupportedCarrier(_) => "UnsupportedCarrier",
            Error::NotInInstance { .. } => "NotInInstance",
            Error::Syntax { .. } => "SyntaxError",
            Error::Sort(_) => "SortError",
            Error::Config(_) => "ConfigError",
        }
    }

    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::Sort(_) | Error::Config(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
