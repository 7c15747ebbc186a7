//! Exact zone algebra over clock valuations.
//!
//! Zones are difference bound matrices ([`Dbm`]) over any [`BoundScalar`].
//! Clock index 0 is the reference clock that is always 0; model clocks
//! start at index 1.
//!
//! [`BoundScalar`]: crate::scalar::BoundScalar

mod bound;
mod dbm;
mod interval;

pub use bound::Bound;
pub use dbm::{Dbm, Split};
pub use interval::{Interval, IntervalError, Status};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZoneError {
    #[error("zone dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("clock index {index} is out of range for dimension {dim}")]
    UnknownClock { index: usize, dim: usize },
    #[error("operation requires canonical zones")]
    NotCanonical,
}
