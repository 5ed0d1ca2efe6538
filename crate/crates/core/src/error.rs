use thiserror::Error;

/// Errors produced anywhere in the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar input is outside the range its model requires.
    #[error("domain error: `{field}` must be {expected}, got {value}")]
    Domain {
        field: String,
        expected: &'static str,
        value: f64,
    },

    /// The contest success function is undefined when every effort is zero.
    #[error("degenerate effort profile: every weighted effort is zero")]
    DegenerateProfile,

    /// The aggregate-effort root finder did not reach its residual tolerance.
    #[error(
        "root finder did not converge after {iterations} iterations; best bracket [{lo:e}, {hi:e}], residual {residual:e}"
    )]
    Convergence {
        lo: f64,
        hi: f64,
        residual: f64,
        iterations: usize,
    },

    /// The Stage-1 continuation operator neither stabilised nor could be
    /// rescued by enumeration.
    #[error("continuation operator did not converge after {rounds} rounds (trace: {trace:?})")]
    NonConvergence {
        rounds: usize,
        trace: Vec<Vec<String>>,
    },

    /// Exhaustive enumeration refused because the field is too large.
    #[error("field has {n} athletes, enumeration is limited to {max}; use the iterative method")]
    TooLarge { n: usize, max: usize },

    /// Caller-side misuse such as a wrong member count or unknown id.
    #[error("usage error: {0}")]
    Usage(String),

    /// A scenario violates a structural invariant.
    #[error("validation error at `{path}`: {reason}")]
    Validation { path: String, reason: String },

    /// Scenario text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported scenario version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(field: impl Into<String>, expected: &'static str, value: f64) -> Self {
        Error::Domain {
            field: field.into(),
            expected,
            value,
        }
    }

    pub(crate) fn validation(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            reason: reason.into(),
        }
    }

    /// Process exit status: 1 for solver failures, 2 for usage and input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence { .. } | Error::NonConvergence { .. } | Error::DegenerateProfile => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
