use thiserror::Error;

/// Problems with a scenario or the command line; all map to exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read `{0}`: {1}")]
    Io(String, String),
    #[error("scenario syntax: {0}")]
    Syntax(String),
    #[error("{at}: {source}")]
    Object {
        at: String,
        #[source]
        source: vertix::Error,
    },
    #[error("{0}: unresolved name `{1}`")]
    Unresolved(String, String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("cannot write report `{0}`: {1}")]
    Report(String, String),
}

impl ConfigError {
    pub fn at(at: &str, source: vertix::Error) -> Self {
        ConfigError::Object { at: at.to_string(), source }
    }
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;
