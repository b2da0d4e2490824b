use thiserror::Error;

/// Errors raised by the set-system, group, orbit, multimatroid and ribbon routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: out-of-range elements, duplicates, length mismatches.
    #[error("invalid input: {0}")]
    Validation(String),

    /// An exhaustive routine was asked to run above its configured size cap.
    #[error("{what} is capped at n = {limit}, got n = {n}")]
    Budget {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    /// The input is well formed but violates an operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The per-cycle order condition does not hold, so no uniform conjugate exists.
    #[error("order condition fails on cycle {cycle:?}: |product| = {product_order}, |g^m| = {target_order}")]
    CycleCondition {
        cycle: Vec<usize>,
        product_order: usize,
        target_order: usize,
    },

    /// A constructed object failed its own postcondition check.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn budget(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::Budget { what, n, limit })
    } else {
        Ok(())
    }
}
