use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NonHermitian(f64),
    #[error("Pauli coefficient {index} has imaginary part {imag:.3e}")]
    ComplexCoefficient { index: usize, imag: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("negative radicand {0:.3e}")]
    NegativeRadicand(f64),
    #[error("degenerate spectrum: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
