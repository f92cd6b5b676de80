use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The config text could not be parsed at all.
    #[error("config parse error on line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },

    /// A key is not part of the documented config schema.
    #[error("unknown config key `{key}`")]
    UnknownKey { key: String },

    /// A parameter violates its documented constraint. Names the key.
    #[error("invalid parameter `{key}`: {constraint}")]
    InvalidParam {
        key: &'static str,
        constraint: String,
    },

    /// A preset name outside {grw, adler, diosi}.
    #[error("unknown preset `{name}` (expected grw, adler or diosi)")]
    UnknownPreset { name: String },

    /// Argument outside the domain of a special function.
    #[error("domain error in {function}: {msg}")]
    Domain { function: &'static str, msg: String },

    /// A density matrix failed a physicality check beyond tolerance.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A root search or iteration failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn invalid_param(key: &'static str, constraint: impl Into<String>) -> Self {
        Error::InvalidParam {
            key,
            constraint: constraint.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
