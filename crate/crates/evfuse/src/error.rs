use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Malformed or invalid scenario; the message starts with the field.
    #[error("invalid scenario: {0}")]
    Input(String),
    #[error("rule error: {0}")]
    Rule(#[from] evfuse_core::Error),
}

impl CliError {
    pub fn input(field: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{field}: {err}"))
    }

    /// 2 for input problems, 3 for rule failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Input(_) => 2,
            CliError::Rule(_) => 3,
        }
    }
}
