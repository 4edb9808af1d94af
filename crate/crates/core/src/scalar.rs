//! Scalar types a vertex valuation may be drawn from.

use std::fmt::{Debug, Display};

use num_rational::Ratio;

/// A number usable as a vertex value.
///
/// Only the order matters to the algorithms, so anything with a (partial)
/// order works; values for which `partial_cmp` fails (NaN) are rejected when
/// a complex is built.
pub trait Scalar:
    num_traits::Num
    + num_traits::FromPrimitive
    + Copy
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn is_ordered(&self) -> bool {
        self.partial_cmp(self).is_some()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for Ratio<i64> {}
