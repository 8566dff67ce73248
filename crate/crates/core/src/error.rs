use core::fmt;

/// Errors reported by the pricing and simulation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter failed validation at construction time.
    InvalidParam {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    /// The input is valid but sits on a singular limit of the requested
    /// operation (e.g. `d_pm` at zero spot or at expiry); callers should use
    /// the limit formulas instead.
    Degenerate(&'static str),
    /// The characteristic quadratic has no two distinct real roots.
    NonPositiveDiscriminant { discriminant: f64 },
    /// The quadrature did not reach the requested tolerance within its node
    /// budget; carries the achieved error estimate.
    QuadratureAccuracy { achieved: f64, requested: f64 },
    /// The tridiagonal system lost diagonal dominance (never expected for a
    /// valid grid).
    SolverBreakdown { row: usize },
    /// A stated precondition does not hold (e.g. volatility ordering).
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParam {
                name,
                value,
                constraint,
            } => write!(f, "invalid {name} = {value}: requires {constraint}"),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::NonPositiveDiscriminant { discriminant } => write!(
                f,
                "characteristic discriminant {discriminant} is not positive; \
                 only the distinct-real-root regime is supported"
            ),
            Error::QuadratureAccuracy {
                achieved,
                requested,
            } => write!(
                f,
                "quadrature reached error {achieved:e}, requested {requested:e}"
            ),
            Error::SolverBreakdown { row } => {
                write!(f, "tridiagonal solve broke down at row {row}")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
