use thiserror::Error;

/// Failure of a CLI operation, classified by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable or malformed config, invalid parameters,
    /// incompatible method and Hamiltonian.
    #[error("validation error: {0}")]
    Validation(String),
    /// A numerical guard tripped during evaluation.
    #[error("numerical guard: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn at(path: impl AsRef<str>, message: impl std::fmt::Display) -> Self {
        CliError::Validation(format!("{}: {message}", path.as_ref()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    /// Classify a toolkit error, prefixing the config path it arose from.
    pub fn from_core(path: &str, e: wavop::Error) -> Self {
        use wavop::Error as E;
        match e {
            E::BoundaryLeak { .. }
            | E::ZeroNorm
            | E::SpectralOverflow { .. }
            | E::Truncation { .. }
            | E::SingularKernel(_)
            | E::Numerical(_) => CliError::Numerical(format!("{path}: {e}")),
            _ => CliError::at(path, e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
