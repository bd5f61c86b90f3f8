use thiserror::Error;

/// Errors raised by the region computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Brute-force enumeration refused because it would exceed the scheme budget.
    #[error("enumeration of {count} schemes exceeds the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
    /// A channel failed validation; the report lists every violation.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    /// Malformed channel file.
    #[error("channel file line {line}: {msg}")]
    ChannelFormat { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_nonneg(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return domain(format!("{name} must be finite and nonnegative, got {x}"));
    }
    Ok(())
}

pub(crate) fn check_unit(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return domain(format!("{name} must lie in [0, 1], got {x}"));
    }
    Ok(())
}
