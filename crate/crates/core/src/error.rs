use std::time::{Duration, Instant};

use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("zero input")]
    ZeroInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("resource exhausted: deadline exceeded")]
    ResourceExhausted,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<crate::poly::ParseError> for Error {
    fn from(e: crate::poly::ParseError) -> Self {
        Error::InvalidArgument(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Wall-clock budget shared by a pipeline of computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(d: Duration) -> Self {
        Deadline(Instant::now().checked_add(d))
    }

    pub fn after_secs(s: f64) -> Self {
        Self::after(Duration::from_secs_f64(s.max(0.0)))
    }

    pub fn expired(&self) -> bool {
        matches!(self.0, Some(t) if Instant::now() >= t)
    }

    /// `Err(ResourceExhausted)` once the deadline has passed.
    pub fn check(&self) -> Result<()> {
        if self.expired() {
            Err(Error::ResourceExhausted)
        } else {
            Ok(())
        }
    }
}

impl Default for Deadline {
    fn default() -> Self {
        Self::none()
    }
}
