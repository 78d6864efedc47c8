use thiserror::Error;

/// Errors produced by state construction, measures, channels and geometry.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("state not positive semidefinite: eigenvalue {eigenvalue:e} < -{tol:e}")]
    NotPositive { eigenvalue: f64, tol: f64 },

    #[error("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("matrix is not X-shaped (entry ({row},{col}) has magnitude {magnitude:e})")]
    NotXShape {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if value.is_finite() && value >= min && value <= max {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    }
}
