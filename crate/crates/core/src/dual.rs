//! Forward-mode dual numbers.
//!
//! `Dual<f64>` carries one derivative, `Dual<Dual<f64>>` carries two
//! independent derivative directions (or value / first / second derivative
//! of a curve, depending on how the seeds are set). All derivatives obtained
//! this way are exact up to floating-point rounding; no finite differencing
//! is involved.

use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A number of the form `re + eps * d` with `d^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    #[inline]
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }

    /// A constant: derivative slot zero.
    #[inline]
    pub fn constant(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }

    /// A seeded variable: derivative slot one.
    #[inline]
    pub fn seeded(re: S) -> Self {
        Dual { re, eps: S::one() }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Dual::new(
            self.re * rhs.re,
            self.re * rhs.eps + self.eps * rhs.re,
        )
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let inv = S::one() / rhs.re;
        Dual::new(
            self.re * inv,
            (self.eps * rhs.re - self.re * rhs.eps) * inv * inv,
        )
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<S: Scalar> Zero for Dual<S> {
    #[inline]
    fn zero() -> Self {
        Dual::new(S::zero(), S::zero())
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    #[inline]
    fn one() -> Self {
        Dual::new(S::one(), S::zero())
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    #[inline]
    fn from_f64(x: f64) -> Self {
        Dual::constant(S::from_f64(x))
    }

    #[inline]
    fn primal(self) -> f64 {
        self.re.primal()
    }

    #[inline]
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.eps * self.re.cos())
    }

    #[inline]
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.eps * self.re.sin()))
    }

    #[inline]
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        let half = S::from_f64(0.5);
        Dual::new(r, self.eps * half / r)
    }

    #[inline]
    fn abs(self) -> Self {
        if self.re.primal() < 0.0 {
            -self
        } else {
            self
        }
    }
}

/// Derivative of a scalar function of one variable at `x`.
pub fn derivative<S: Scalar>(f: impl Fn(Dual<S>) -> Dual<S>, x: S) -> S {
    f(Dual::seeded(x)).eps
}

/// Second-order seed for a curve parameter: feeding this through an
/// evaluator yields value, first and second derivative with respect to `s`.
#[inline]
pub fn curve_seed(s: f64) -> Dual<Dual<f64>> {
    Dual::new(Dual::new(s, 1.0), Dual::new(1.0, 0.0))
}

/// Value, first and second derivative of a curve component evaluated at a
/// [`curve_seed`].
#[inline]
pub fn curve_parts(x: Dual<Dual<f64>>) -> (f64, f64, f64) {
    (x.re.re, x.re.eps, x.eps.eps)
}

/// Seeds for a mixed partial in two independent variables: the inner slot
/// tracks `u`, the outer slot tracks `v`. For `w = f(u, v)` evaluated on
/// these seeds, `w.re.re = f`, `w.re.eps = f_u`, `w.eps.re = f_v`,
/// `w.eps.eps = f_uv`.
#[inline]
pub fn mixed_seed_u(u: f64) -> Dual<Dual<f64>> {
    Dual::new(Dual::new(u, 1.0), Dual::new(0.0, 0.0))
}

#[inline]
pub fn mixed_seed_v(v: f64) -> Dual<Dual<f64>> {
    Dual::new(Dual::new(v, 0.0), Dual::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn polynomial_derivative_is_exact() {
        // f(x) = 3x^3 - 2x + 5, f'(x) = 9x^2 - 2
        let f = |x: Dual<f64>| {
            let three = Dual::from_f64(3.0);
            let two = Dual::from_f64(2.0);
            let five = Dual::from_f64(5.0);
            three * x * x * x - two * x + five
        };
        let d = derivative(f, 1.5);
        assert_eq!(d, 9.0 * 1.5 * 1.5 - 2.0);
    }

    #[test]
    fn curve_seed_gives_second_derivative() {
        // x(s) = sin(2s): x'' = -4 sin(2s)
        let s = 0.7;
        let two = Dual::<Dual<f64>>::from_f64(2.0);
        let x = (two * curve_seed(s)).sin();
        let (v, d1, d2) = curve_parts(x);
        assert_abs_diff_eq!(v, (2.0 * s).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(d1, 2.0 * (2.0 * s).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(d2, -4.0 * (2.0 * s).sin(), epsilon = 1e-14);
    }

    #[test]
    fn mixed_partial_of_product() {
        // f(u, v) = u^2 v + 3uv, f_uv = 2u + 3
        let (u, v) = (1.3, -0.4);
        let du = mixed_seed_u(u);
        let dv = mixed_seed_v(v);
        let three = Dual::<Dual<f64>>::from_f64(3.0);
        let w = du * du * dv + three * du * dv;
        assert_abs_diff_eq!(w.eps.eps, 2.0 * u + 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.re.eps, 2.0 * u * v + 3.0 * v, epsilon = 1e-15);
        assert_abs_diff_eq!(w.eps.re, u * u + 3.0 * u, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn product_rule(x in -3.0f64..3.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            // d/dx [(x + a)(x + b)] = 2x + a + b
            let f = |x: Dual<f64>| (x + Dual::from_f64(a)) * (x + Dual::from_f64(b));
            let d = derivative(f, x);
            prop_assert!((d - (2.0 * x + a + b)).abs() < 1e-12);
        }

        #[test]
        fn sin_cos_derivatives(x in -6.0f64..6.0) {
            let ds = derivative(|x: Dual<f64>| x.sin(), x);
            let dc = derivative(|x: Dual<f64>| x.cos(), x);
            prop_assert!((ds - x.cos()).abs() < 1e-15);
            prop_assert!((dc + x.sin()).abs() < 1e-15);
        }

        #[test]
        fn quotient_rule(x in 0.5f64..3.0) {
            // d/dx [sin x / x] = (x cos x - sin x) / x^2
            let d = derivative(|x: Dual<f64>| x.sin() / x, x);
            let expect = (x * x.cos() - x.sin()) / (x * x);
            prop_assert!((d - expect).abs() < 1e-14);
        }
    }
}
