use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid qubit subset {keep:?} for a {n_qubits}-qubit register")]
    InvalidQubitSubset { keep: Vec<usize>, n_qubits: usize },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}")]
    NotPositive { eigenvalue: f64 },

    #[error("trace is {trace:.15}, expected 1")]
    NotNormalized { trace: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ground state is {count}-fold degenerate (gap {gap:.3e} below 1e-10)")]
    DegenerateGroundState { count: usize, gap: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("channel fixed point is not unique (pivot {pivot:.3e})")]
    NonUniqueFixedPoint { pivot: f64 },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors caused by the caller's parameters rather than by numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::InvalidQubitSubset { .. }
                | Error::DimensionMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
