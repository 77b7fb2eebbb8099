use thiserror::Error;

/// Errors raised by the exact and experimental routines of this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two values that must share a size or object do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// The computation would exceed a configured size cap.
    ///
    /// Caps can be lifted by setting `TEL_SIZE_GUARD=off`.
    #[error("size guard: {what} = {requested} exceeds limit {limit} (set TEL_SIZE_GUARD=off to override)")]
    SizeGuard {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    /// A moment table does not contain an order the caller asked for.
    #[error("moment order {order} not available (table has max order {max_order})")]
    MissingOrder { order: String, max_order: usize },

    /// A rejection sampler hit its hard retry cap.
    #[error("rejection sampler gave up after {0} attempts")]
    RetryCap(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
