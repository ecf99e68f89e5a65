use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested size exceeds the documented implementation bound.
    #[error("resource limit: {what} = {requested} exceeds the bound {bound}")]
    Bound {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    /// Two partitions are not comparable in the refinement order.
    #[error("order error: {0}")]
    Order(String),

    /// Structural failure (reducible chain, unreconstructible tree, ...).
    #[error("structure error: {0}")]
    Structure(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Numerical evaluation did not reach the requested accuracy.
    #[error("precision error: {message} (residual {residual:e})")]
    Precision { message: String, residual: f64 },

    /// Evaluation point sits on (or numerically at) a pole.
    #[error("pole near {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// A mathematical assertion failed numerically. This is a finding, not a crash.
    #[error("verification failure: {0}")]
    Verification(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn bound(what: &'static str, requested: usize, bound: usize) -> Self {
        Error::Bound {
            what,
            requested,
            bound,
        }
    }

    pub(crate) fn check_bound(what: &'static str, requested: usize, bound: usize) -> Result<()> {
        if requested > bound {
            Err(Error::bound(what, requested, bound))
        } else {
            Ok(())
        }
    }

    /// Whether this error reports a mathematical finding rather than a usage or engineering error.
    pub fn is_finding(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
