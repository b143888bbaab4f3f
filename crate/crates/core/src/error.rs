use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("requested limit {requested} exceeds the configured memory cap {cap}")]
    Resource { requested: usize, cap: usize },

    #[error("shape mismatch: left limit {left}, right limit {right}")]
    Shape { left: usize, right: usize },

    #[error("argument {requested} is beyond the sieved range (current limit {limit})")]
    Range { requested: u64, limit: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no branch of the dichotomy found at x = {x} (integral bound violated: {integral_bound_violated})")]
    Counterexample { x: f64, integral_bound_violated: bool },

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
