use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::scalar::BoundScalar;

/// Upper bound of a difference constraint `x_i - x_j ≺ value`.
///
/// `(v, <)` is tighter than `(v, ≤)`; `Infinity` is looser than everything.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Bound<T> {
    Finite { value: T, strict: bool },
    Infinity,
}

impl<T: BoundScalar> Bound<T> {
    pub fn le(value: T) -> Self {
        Bound::Finite {
            value,
            strict: false,
        }
    }

    pub fn lt(value: T) -> Self {
        Bound::Finite {
            value,
            strict: true,
        }
    }

    pub fn infinity() -> Self {
        Bound::Infinity
    }

    /// `(0, ≤)`, the diagonal entry of every non-empty matrix.
    pub fn zero() -> Self {
        Bound::le(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinity)
    }

    pub fn value(&self) -> Option<T> {
        match self {
            Bound::Finite { value, .. } => Some(*value),
            Bound::Infinity => None,
        }
    }

    pub fn is_strict(&self) -> bool {
        match self {
            Bound::Finite { strict, .. } => *strict,
            Bound::Infinity => true,
        }
    }

    /// The bound of the complementary constraint, read in the opposite
    /// direction: `¬(x - y ≺ c)` is `y - x ≺' -c`.
    ///
    /// Panics on `Infinity`, whose complement is unsatisfiable.
    pub fn complement(&self) -> Self {
        match *self {
            Bound::Finite { value, strict } => Bound::Finite {
                value: -value,
                strict: !strict,
            },
            Bound::Infinity => panic!("complement of an infinite bound"),
        }
    }
}

impl<T: BoundScalar> Ord for Bound<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Infinity, Bound::Infinity) => Ordering::Equal,
            (Bound::Infinity, _) => Ordering::Greater,
            (_, Bound::Infinity) => Ordering::Less,
            (
                Bound::Finite {
                    value: a,
                    strict: sa,
                },
                Bound::Finite {
                    value: b,
                    strict: sb,
                },
            ) => a.cmp(b).then_with(|| sb.cmp(sa)),
        }
    }
}

impl<T: BoundScalar> PartialOrd for Bound<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: BoundScalar> Add for Bound<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (
                Bound::Finite {
                    value: a,
                    strict: sa,
                },
                Bound::Finite {
                    value: b,
                    strict: sb,
                },
            ) => Bound::Finite {
                value: a + b,
                strict: sa || sb,
            },
            _ => Bound::Infinity,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Bound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite { value, strict } => {
                write!(f, "({}, {})", value, if *strict { "<" } else { "<=" })
            }
            Bound::Infinity => write!(f, "(inf, <)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_is_tighter_than_weak() {
        assert!(Bound::lt(3) < Bound::le(3));
        assert!(Bound::le(2) < Bound::lt(3));
        assert!(Bound::le(1_000_000i64) < Bound::infinity());
    }

    #[test]
    fn addition_propagates_strictness() {
        assert_eq!(Bound::le(2) + Bound::le(3), Bound::le(5));
        assert_eq!(Bound::le(2) + Bound::lt(-3), Bound::lt(-1));
        assert_eq!(Bound::lt(2) + Bound::infinity(), Bound::<i32>::Infinity);
    }

    #[test]
    fn complement_flips_direction_and_strictness() {
        assert_eq!(Bound::le(4).complement(), Bound::lt(-4));
        assert_eq!(Bound::lt(-1).complement(), Bound::le(1));
    }
}
