use thiserror::Error;

use crate::majorana::MajoranaIndex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{qubits} qubits exceeds the dense limit of {limit}")]
    DenseLimit { qubits: usize, limit: usize },

    #[error("at most {max} qubits are supported, got {qubits}")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("qubit index {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },

    #[error("invalid Pauli label character {0:?}")]
    InvalidLabel(char),

    #[error("Pauli term with phase {0} is not Hermitian")]
    NonHermitianTerm(&'static str),

    #[error("sites per arm must be at least 1, got {0}")]
    InvalidSites(usize),

    #[error("arm must be 1, 2 or 3, got {0}")]
    InvalidArm(u8),

    #[error("Majorana operator {index} is not valid for a layout with {sites} sites per arm")]
    InvalidMajorana { index: MajoranaIndex, sites: usize },

    #[error("configuration arms must be distinct, got ({0}, {1})")]
    InvalidConfiguration(u8, u8),

    #[error("exchange operator needs two distinct Majoranas, got {0} twice")]
    DegenerateExchange(MajoranaIndex),

    #[error("monomial is not a Hermitian quadratic term")]
    NotQuadratic,

    #[error("step duration must be positive, got {0}")]
    InvalidDuration(f64),

    #[error("{name} must be at least 1, got {value}")]
    InvalidCount { name: &'static str, value: usize },

    #[error("protocol has 6 steps, requested {0}")]
    InvalidStepCount(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ground space needs at least 2 states, sector has {0}")]
    SectorTooSmall(usize),

    #[error("state vector has zero norm")]
    ZeroNorm,
}

pub type Result<T> = std::result::Result<T, Error>;
