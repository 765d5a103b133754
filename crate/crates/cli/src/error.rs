use thiserror::Error;
use weil_core::NotWeil;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("No: {0}")]
    NotWeil(NotWeil),

    #[error("{0}")]
    Core(#[from] weil_core::Error),

    #[error("invalid algebra `{spec}`: {message}")]
    AlgebraSpec { spec: String, message: String },

    #[error("invalid binding `{0}`: expected name=value")]
    Binding(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use weil_core::Error as E;
        match self {
            CliError::NotWeil(_) => 1,
            CliError::AlgebraSpec { .. }
            | CliError::Binding(_)
            | CliError::Io { .. }
            | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::Parse { .. }
                | E::UnknownIdentifier { .. }
                | E::InvalidIdeal(_)
                | E::InvalidSettings(_) => 2,
                _ => 3,
            },
        }
    }
}
