use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{what}: argument {value} outside domain ({constraint})")]
    Domain {
        what: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Inputs are individually valid but violate a structural requirement
    /// (window ordering, normalization, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A closed form was requested outside the cosmology/detector family it
    /// exists for.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The receiver state has `|α_B||β_B| = 0`; its measurement statistics
    /// carry no signal at leading order.
    #[error("degenerate receiver state: |alpha_B| |beta_B| = 0")]
    DegenerateReceiver,

    /// Quadrature did not reach the requested tolerance within its budget.
    #[error("{context}: no convergence (estimate {estimate:e}, error {error_estimate:e})")]
    Convergence {
        context: String,
        estimate: f64,
        error_estimate: f64,
    },

    /// An oscillatory tail whose partial sums do not settle.
    #[error("{context}: oscillatory tail diverges (last term {last_term:e})")]
    Divergence { context: String, last_term: f64 },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            constraint,
        }
    }

    /// Prefixes the context of convergence-type errors, leaving the others
    /// unchanged.
    pub fn within(self, outer: &str) -> Self {
        match self {
            Error::Convergence {
                context,
                estimate,
                error_estimate,
            } => Error::Convergence {
                context: format!("{outer}: {context}"),
                estimate,
                error_estimate,
            },
            Error::Divergence { context, last_term } => Error::Divergence {
                context: format!("{outer}: {context}"),
                last_term,
            },
            other => other,
        }
    }

    /// True for failures of a numerical procedure, as opposed to invalid
    /// input.
    pub fn is_computational(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::Divergence { .. })
    }
}
