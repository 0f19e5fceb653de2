use thiserror::Error;

/// Errors raised by the geometry, quadrature and solver routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum NilError {
    #[error("tangent vectors are based at different points")]
    BaseMismatch,

    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("radius must be nonnegative, got {0}")]
    NegativeRadius(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation point {t} lies below the catenoid neck {t0}")]
    BelowNeck { t: f64, t0: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    QuadratureNotConverged { tol: f64, estimate: f64 },

    #[error("no admissible flux: requested height difference {requested} exceeds the maximal graph difference {max_attainable}")]
    NoAdmissibleFlux { requested: f64, max_attainable: f64 },

    #[error("degenerate immersion: first fundamental form determinant {0:e}")]
    DegenerateImmersion(f64),

    #[error("Newton iteration did not converge after {iterations} steps (last residual {residual:e})")]
    NewtonDiverged { iterations: usize, residual: f64 },

    #[error("singular linearization at pivot {0}")]
    SingularMatrix(usize),

    #[error("bisection bracket failure: {0}")]
    BracketFailure(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for NilError {
    fn from(e: std::io::Error) -> Self {
        NilError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, NilError>;
