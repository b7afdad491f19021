use thiserror::Error;

use sasaki_core::catalog::CatalogError;

/// Input errors. Every variant maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("manifest: {path}: {message}")]
    Manifest { path: String, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("give exactly one of --catalog and --manifest")]
    NoSubject,
    #[error("{command} needs a {needed} structure, got a {found} one")]
    WrongSubject { command: String, needed: &'static str, found: &'static str },
    #[error("connection {0} is not available for this subject: {1}")]
    Connection(String, String),
}

impl CliError {
    pub(crate) fn manifest(path: impl Into<String>, message: impl ToString) -> CliError {
        CliError::Manifest { path: path.into(), message: message.to_string() }
    }
}
