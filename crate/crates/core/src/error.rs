use thiserror::Error;

/// Errors raised by the model, integrator and controllers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("matrix is singular: |det| = {det:e} is not above threshold {threshold:e}")]
    SingularMatrix { det: f64, threshold: f64 },

    #[error("{name} must be {constraint} (got {value})")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("state became non-finite at t = {t}; last finite sample index {last_finite}")]
    NonFiniteState { last_finite: usize, t: f64 },

    #[error("impedance law not satisfied by the supplied state: residual {residual:e} exceeds {tolerance:e}")]
    PreconditionViolated { residual: f64, tolerance: f64 },
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::InvalidParameter {
            name,
            constraint: "> 0",
            value,
        })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ModelError::InvalidParameter {
            name,
            constraint: ">= 0",
            value,
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::InvalidParameter {
            name,
            constraint: "finite",
            value,
        })
    }
}
