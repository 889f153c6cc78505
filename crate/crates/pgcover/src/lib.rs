//! File formats, reports, a parallel verification driver, and the command
//! line front end for [`pgcover_core`].

pub mod cli;
pub mod driver;
pub mod files;
pub mod report;

use std::path::PathBuf;

pub use pgcover_core as core;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] pgcover_core::Error),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: Box<Error> },
    #[error("thread pool: {0}")]
    Threads(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reads a file, attaching the path to any error.
pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
