use std::fmt;

use thiserror::Error;

use crate::space::ValidationReport;

/// Why a prescribed Ricci curvature problem has no solution.
#[derive(Debug, Clone, PartialEq)]
pub enum NotSolvableReason {
    /// `alpha_T` does not exceed `eta1 / eta2`.
    BelowThreshold,
    /// Every invariant metric has the same Ricci curvature and the target is
    /// not proportional to it.
    NotProportionalToConstantRicci,
    /// The constant Ricci tensor is not positive definite.
    ConstantRicciNotPositive,
}

/// A target ratio for which `Ric g = cT` has no solution with `c > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NotSolvable {
    pub alpha_t: f64,
    /// Solvability threshold `eta1 / eta2` (or the constant Ricci ratio).
    pub threshold: f64,
    pub reason: NotSolvableReason,
}

impl fmt::Display for NotSolvable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            NotSolvableReason::BelowThreshold => write!(
                f,
                "alpha_T={} does not exceed the solvability threshold {}",
                self.alpha_t, self.threshold
            ),
            NotSolvableReason::NotProportionalToConstantRicci => write!(
                f,
                "Ricci curvature is constant with ratio {}, target ratio {} is not proportional",
                self.threshold, self.alpha_t
            ),
            NotSolvableReason::ConstantRicciNotPositive => {
                write!(f, "the constant Ricci tensor is not positive definite")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("component {index} must be positive, got {value}")]
    NonPositiveComponent { index: usize, value: f64 },

    #[error("expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires s = 2 summands, space has s = {0}")]
    RequiresTwoSummands(usize),

    #[error("operation requires a maximal isotropy subgroup")]
    NotMaximal,

    #[error("operation requires an intermediate subgroup")]
    NoIntermediateSubgroup,

    #[error("space is neither maximal nor has an intermediate subgroup")]
    Unclassified,

    #[error("ratio must be positive and finite, got {0}")]
    NonPositiveRatio(f64),

    #[error("target tensor must be positive semidefinite and nonzero, got ({0}, {1})")]
    InvalidTarget(f64, f64),

    #[error("no sign change found while bracketing the root ({0})")]
    Bracketing(String),

    #[error("{0} is not an Einstein ratio of this space")]
    NotEinsteinRatio(f64),

    #[error("not solvable: {0}")]
    NotSolvable(NotSolvable),

    #[error("integration step size underflow at t={t} (dt={dt})")]
    StepUnderflow { t: f64, dt: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("space data failed validation:\n{0}")]
    Validation(ValidationReport),

    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("schema error at '{field}': {message}")]
    Schema { field: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
