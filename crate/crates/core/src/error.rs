use thiserror::Error;

/// Errors produced by the state algebra, PPT analysis and classification
/// pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("probability p{index} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    BadNormalization { sum: f64 },

    #[error("expected {expected} components, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("correlation r{index} = {value} is outside [-1, 1]")]
    CorrelationOutOfRange { index: usize, value: f64 },

    #[error("correlation vector maps outside the simplex (p{index} = {value})")]
    OutsideSimplex { index: usize, value: f64 },

    #[error("qubit index {0} is not in 1..=3")]
    InvalidQubit(usize),

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid special-family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("invalid category-1 triangle parameters: {0}")]
    InvalidTriangleParams(String),

    #[error(
        "inequality test and partial-transpose oracle disagree \
         (min inequality {min_inequality:e}, min eigenvalue {min_eigenvalue:e})"
    )]
    OracleDisagreement {
        min_inequality: f64,
        min_eigenvalue: f64,
    },

    #[error("state is not PPT (min inequality {min_inequality:e})")]
    NotPpt { min_inequality: f64 },

    #[error("separability certificate does not reconstruct the state (error {error:e})")]
    CertificateMismatch { error: f64 },

    #[error("state is both detected by {witness} and certified separable")]
    InconsistentVerdict { witness: String },

    #[error("common eigenbasis refinement left a subspace of dimension {0}")]
    DegenerateEigenbasis(usize),

    #[error("observables do not commute: {0} and {1}")]
    NonCommuting(String, String),

    #[error("conjugated observable is not a signed Pauli string: {0}")]
    NotPauli(String),

    #[error("transformed row does not match any row of the table")]
    RowMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
