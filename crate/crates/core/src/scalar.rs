//! Scalar abstraction over the number types the tensor machinery runs on.
//!
//! Every metric, connection and closed-form evaluator in this crate is
//! generic over [`Scalar`], so the same expression can be evaluated on plain
//! floats or on (nested) dual numbers to obtain exact derivatives.

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A field-like scalar with the elementary functions the evaluators need.
///
/// Implemented for `f64`, `f32` and [`crate::dual::Dual<S>`]; nesting duals
/// gives exact higher derivatives.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_f64(x: f64) -> Self;

    /// The primal value with every derivative slot stripped.
    fn primal(self) -> f64;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn primal(self) -> f64 {
                self as f64
            }
            #[inline]
            fn sin(self) -> Self {
                <$t>::sin(self)
            }
            #[inline]
            fn cos(self) -> Self {
                <$t>::cos(self)
            }
            #[inline]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            #[inline]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
        }
    };
}

impl_scalar_float!(f64);
impl_scalar_float!(f32);

/// Lift an `f64` slice into any scalar type.
pub fn lift<S: Scalar>(xs: &[f64]) -> Vec<S> {
    xs.iter().map(|&x| S::from_f64(x)).collect()
}
