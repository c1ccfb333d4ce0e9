use quantlab_core::Error as CoreError;

/// Exit status for a rejected configuration.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for a failed check or numerical error.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(CoreError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Numerical(_) | Self::Io(_) => EXIT_FAILURE,
        }
    }

    /// Short machine-readable name of the failure.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Io(_) => "io",
            Self::Numerical(e) => match e {
                CoreError::InvalidTruncation(_) => "invalid-truncation",
                CoreError::CocycleOutOfTable(..) => "cocycle-out-of-table",
                CoreError::UnnormalizedCocycle(_) => "unnormalized-cocycle",
                CoreError::CocycleIdentity(_) => "cocycle-identity",
                CoreError::ExactnessViolation(_) => "exactness-violation",
                CoreError::CocycleInconsistency(_) => "cocycle-inconsistency",
                CoreError::DegreeTooHigh(_) => "degree-too-high",
                CoreError::UnsupportedGauge(_) => "unsupported-gauge",
                CoreError::InvalidSection => "invalid-section",
                CoreError::Resolution { .. } => "resolution",
                CoreError::NonUniformFlux(_) => "non-uniform-flux",
                CoreError::IndeterminateKernel { .. } => "indeterminate-kernel",
                CoreError::IndexViolation { .. } => "index-violation",
                CoreError::TraceMismatch { .. } => "trace-mismatch",
                CoreError::DegenerateToeplitz => "degenerate-toeplitz",
                CoreError::InvalidParameter(_) => "invalid-parameter",
            },
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidTruncation(_)
            | CoreError::DegreeTooHigh(_)
            | CoreError::InvalidSection
            | CoreError::Resolution { .. }
            | CoreError::InvalidParameter(_) => Self::Usage(e.to_string()),
            e => Self::Numerical(e),
        }
    }
}
