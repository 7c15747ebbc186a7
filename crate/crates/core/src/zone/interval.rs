use std::fmt;

use thiserror::Error;

use super::Bound;
use crate::scalar::BoundScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval lower bound is negative")]
    NegativeLower,
    #[error("interval lower bound exceeds its upper bound")]
    Inverted,
    #[error("interval is empty")]
    Empty,
}

/// A non-empty interval of non-negative reals with integer-like endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Interval<T> {
    lower: T,
    lower_strict: bool,
    upper: Option<T>,
    upper_strict: bool,
}

/// Position of a formula-clock value relative to an interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Status {
    Before,
    Inside,
    After,
}

impl Status {
    pub fn next(self) -> Option<Status> {
        match self {
            Status::Before => Some(Status::Inside),
            Status::Inside => Some(Status::After),
            Status::After => None,
        }
    }
}

impl<T: BoundScalar> Interval<T> {
    /// `upper = None` means `+∞`, which is always open.
    pub fn new(
        lower: T,
        lower_strict: bool,
        upper: Option<T>,
        upper_strict: bool,
    ) -> Result<Self, IntervalError> {
        if lower < T::zero() {
            return Err(IntervalError::NegativeLower);
        }
        if let Some(u) = upper {
            if lower > u {
                return Err(IntervalError::Inverted);
            }
            if lower == u && (lower_strict || upper_strict) {
                return Err(IntervalError::Empty);
            }
        }
        Ok(Interval {
            lower,
            lower_strict,
            upper,
            upper_strict: upper.is_none() || upper_strict,
        })
    }

    /// `[lower; upper]`
    pub fn closed(lower: T, upper: T) -> Result<Self, IntervalError> {
        Self::new(lower, false, Some(upper), false)
    }

    /// `[lower; inf)`
    pub fn from(lower: T) -> Self {
        Interval {
            lower,
            lower_strict: false,
            upper: None,
            upper_strict: true,
        }
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn lower_strict(&self) -> bool {
        self.lower_strict
    }

    pub fn upper(&self) -> Option<T> {
        self.upper
    }

    pub fn upper_strict(&self) -> bool {
        self.upper_strict
    }

    /// Largest finite endpoint; the extrapolation constant of the clock
    /// the interval is measured on.
    pub fn max_constant(&self) -> T {
        match self.upper {
            Some(u) if u > self.lower => u,
            _ => self.lower,
        }
    }

    pub fn status_of(&self, value: T) -> Status {
        let below = if self.lower_strict {
            value <= self.lower
        } else {
            value < self.lower
        };
        if below {
            return Status::Before;
        }
        match self.upper {
            Some(u) if value > u || (self.upper_strict && value == u) => Status::After,
            _ => Status::Inside,
        }
    }

    pub fn contains(&self, value: T) -> bool {
        self.status_of(value) == Status::Inside
    }

    /// Constraints `(row, col, bound)` on clock index `clock` (DBM indexing,
    /// zero clock = 0) describing the given status region.
    pub(crate) fn status_constraints(&self, clock: usize, status: Status) -> Vec<(usize, usize, Bound<T>)> {
        let mut out = Vec::new();
        match status {
            Status::Before => {
                // f < lo, or f <= lo when the interval is left-open
                let b = if self.lower_strict {
                    Bound::le(self.lower)
                } else {
                    Bound::lt(self.lower)
                };
                out.push((clock, 0, b));
            }
            Status::Inside => {
                let lo = if self.lower_strict {
                    Bound::lt(-self.lower)
                } else {
                    Bound::le(-self.lower)
                };
                out.push((0, clock, lo));
                if let Some(u) = self.upper {
                    let hi = if self.upper_strict {
                        Bound::lt(u)
                    } else {
                        Bound::le(u)
                    };
                    out.push((clock, 0, hi));
                }
            }
            Status::After => {
                if let Some(u) = self.upper {
                    let b = if self.upper_strict {
                        Bound::le(-u)
                    } else {
                        Bound::lt(-u)
                    };
                    out.push((0, clock, b));
                } else {
                    // nothing lies above +inf
                    out.push((0, clock, Bound::lt(T::zero())));
                    out.push((clock, 0, Bound::lt(T::zero())));
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_strict { '(' } else { '[' };
        match &self.upper {
            Some(u) => {
                let close = if self.upper_strict { ')' } else { ']' };
                write!(f, "{}{};{}{}", open, self.lower, u, close)
            }
            None => write!(f, "{}{};inf)", open, self.lower),
        }
    }
}
