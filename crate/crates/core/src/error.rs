use thiserror::Error;

/// Errors raised across the oscillator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a special function or coordinate patch.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantum-number label is not admissible for the requested operation.
    #[error("label error: {0}")]
    Label(String),

    /// A basis mixes groups, offsets or mode numbers that cannot share a block.
    #[error("basis error: {0}")]
    Basis(String),

    /// The operation is not defined for this family of states.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A non-normalizable function was passed where a Fock-space state is required.
    #[error("non-Fock function rejected: {0}")]
    NonFock(String),
}

pub type Result<T> = std::result::Result<T, Error>;
