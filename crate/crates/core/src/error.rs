use thiserror::Error;

/// Errors raised by graph ingestion and every computation built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("graph is not regular")]
    RegularityRequired,

    #[error("graph is not bipartite")]
    BipartiteRequired,

    #[error("series does not converge absolutely: need 2d < n, got n = {n}, d = {d}")]
    ConvergenceDomain { n: usize, d: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("could not isolate a single integer with {terms} terms at {bits} bits")]
    PrecisionExhausted { bits: u32, terms: usize },

    #[error("no simple graph found after {attempts} pairing attempts")]
    RetryBudgetExhausted { attempts: u64 },

    #[error("{subsets} subsets exceed the exhaustive budget of {budget}; use monte-carlo mode")]
    ExhaustiveBudget { subsets: String, budget: u64 },

    #[error("unknown graph name: {0}")]
    UnknownGraph(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::Unsupported(_) => "unsupported_operation",
            Error::RegularityRequired => "regularity_required",
            Error::BipartiteRequired => "bipartite_required",
            Error::ConvergenceDomain { .. } => "convergence_domain",
            Error::Domain(_) => "domain_error",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::RetryBudgetExhausted { .. } => "retry_budget_exhausted",
            Error::ExhaustiveBudget { .. } => "exhaustive_budget_exceeded",
            Error::UnknownGraph(_) => "unknown_graph",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
