use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the function.
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Argument at (or within the guard radius of) a pole.
    #[error("{func}: pole at {value}")]
    Pole { func: &'static str, value: f64 },

    /// Result does not fit in binary64.
    #[error("{func}: result out of range at {value}")]
    Range { func: &'static str, value: f64 },

    /// Invalid parameter combination (not a single-argument domain issue).
    #[error("{0}")]
    Parameter(String),

    /// Series hit its term cap before reaching the requested tolerance.
    #[error("{func}: no convergence after {terms} terms (estimate {estimate}, error bound {error})")]
    Convergence {
        func: &'static str,
        terms: usize,
        estimate: f64,
        error: f64,
    },

    /// Adaptive quadrature could not meet the tolerance within its depth cap.
    #[error("quadrature failed: estimate {estimate}, error {error} after {subdivisions} subdivisions")]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// Root bracketing failed.
    #[error("no sign change found in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),

    /// Fit input that cannot define a constant.
    #[error("degenerate fit input: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain { func, value, expected }
    }
}
