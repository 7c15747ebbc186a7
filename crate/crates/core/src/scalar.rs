//! Scalar types usable as clock-bound constants.
//!
//! Zone operations only need exact, totally ordered, signed arithmetic, so
//! they are written against [`BoundScalar`] rather than a concrete integer
//! type. Machine integers and `num_rational::Ratio<i64>` both qualify;
//! IEEE floats do not (no `Ord`), which keeps closure exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Signed};

pub trait BoundScalar:
    Copy + Ord + Hash + Debug + Display + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Converts a non-negative model constant.
    fn from_const(c: u32) -> Self {
        Self::from_u32(c).expect("model constant must fit the bound scalar")
    }
}

impl<T> BoundScalar for T where
    T: Copy + Ord + Hash + Debug + Display + Signed + FromPrimitive + Send + Sync + 'static
{
}
