use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error(transparent)]
    Core(#[from] bcncat_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    /// 1 for bad input, 2 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) => 2,
            _ => 1,
        }
    }
}
