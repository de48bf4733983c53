use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring of coefficients the embedding formulas are evaluated over.
///
/// Implemented by `f64` for plain evaluation and by [`crate::jet::Jet2`] so the
/// same code path yields derivatives along curves.
pub trait Scalar:
    Copy + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;

    /// The value slot (the scalar itself for `f64`).
    fn value(&self) -> f64;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn scale(self, c: f64) -> Self {
        self * Self::constant(c)
    }
}

impl Scalar for f64 {
    #[inline]
    fn constant(c: f64) -> Self {
        c
    }

    #[inline]
    fn value(&self) -> f64 {
        *self
    }

    #[inline]
    fn scale(self, c: f64) -> Self {
        self * c
    }
}
