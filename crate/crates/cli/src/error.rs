use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] e10pairs::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use e10pairs::Error as E;
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 5,
            CliError::Core(e) => match e {
                E::Domain(_) | E::Invalid(_) => 2,
                E::Degenerate => 3,
                E::Unsupported(_) | E::DimensionUnsupported(_) => 4,
                E::NotIsometry | E::NotSaturated(_) | E::NotAntiIsometry(_) => 1,
            },
        }
    }
}
