use thiserror::Error;

/// A problem with a module file or a command-line value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{field}: {message}")]
    Field { field: String, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}
