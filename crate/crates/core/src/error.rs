use thiserror::Error;

/// Errors raised by the analysis library.
///
/// Every variant maps to a stable string code through [`Error::code`]; the
/// command-line front end serializes that code so scripts can match on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("structure constants are not antisymmetric (max defect {defect:.3e})")]
    AntisymmetryViolation { defect: f64 },

    #[error("Jacobi identity violated (max residual {residual:.3e})")]
    JacobiViolation { residual: f64 },

    #[error("algebra is not nilpotent (upper central series stalls at dimension {stalled_at} of {dim})")]
    NotNilpotent { stalled_at: usize, dim: usize },

    #[error("subspace {0} is not closed under the bracket")]
    NotSubalgebra(String),

    #[error("classification is only available up to dimension 5 (got {0})")]
    DimTooLarge(usize),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("no normalizable vacuum in the truncated space (residual {residual:.3e})")]
    NoVacuum { residual: f64 },

    #[error("vacuum pairing too small to normalize (|<phi_0, psi_0>| = {overlap:.3e})")]
    NormalizationFailure { overlap: f64 },

    #[error("operator family is degenerate on the safe block: {0}")]
    DegenerateSpan(String),

    #[error("safe block too small: {0}")]
    BlockTooSmall(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(_) => "SHAPE_MISMATCH",
            Error::NonFinite(_) => "NON_FINITE",
            Error::AntisymmetryViolation { .. } => "ANTISYMMETRY_VIOLATION",
            Error::JacobiViolation { .. } => "JACOBI_VIOLATION",
            Error::NotNilpotent { .. } => "NOT_NILPOTENT",
            Error::NotSubalgebra(_) => "NOT_SUBALGEBRA",
            Error::DimTooLarge(_) => "DIM_TOO_LARGE",
            Error::BadParameter(_) => "BAD_PARAMETER",
            Error::NoVacuum { .. } => "NO_VACUUM",
            Error::NormalizationFailure { .. } => "NORMALIZATION_FAILURE",
            Error::DegenerateSpan(_) => "DEGENERATE_SPAN",
            Error::BlockTooSmall(_) => "BLOCK_TOO_SMALL",
            Error::InvalidInput(_) => "INVALID_INPUT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn codes_are_distinct() {
        let all = [
            Error::ShapeMismatch(String::new()),
            Error::NonFinite(String::new()),
            Error::AntisymmetryViolation { defect: 0.0 },
            Error::JacobiViolation { residual: 0.0 },
            Error::NotNilpotent { stalled_at: 0, dim: 0 },
            Error::NotSubalgebra(String::new()),
            Error::DimTooLarge(0),
            Error::BadParameter(String::new()),
            Error::NoVacuum { residual: 0.0 },
            Error::NormalizationFailure { overlap: 0.0 },
            Error::DegenerateSpan(String::new()),
            Error::BlockTooSmall(String::new()),
            Error::InvalidInput(String::new()),
        ];
        let codes: HashSet<_> = all.iter().map(Error::code).collect();
        assert_eq!(codes.len(), all.len());
    }
}
