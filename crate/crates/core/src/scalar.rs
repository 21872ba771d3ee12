//! Real scalar abstraction shared by the series, Grunsky and Hankel code.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the coefficient arithmetic runs over: `f32` or `f64`.
///
/// The tolerances are per-type because a residual that is negligible in
/// double precision is far below the resolution of single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// How far an external constant term may sit from 1 and still count as 1.
    fn unit_tol() -> Self;

    /// Bound on the residual of a formal identity evaluated at truncation
    /// orders up to 16 with coefficients of modulus at most 2.
    fn identity_tol() -> Self;

    /// Converts a literal. Every `f64` literal is representable (possibly
    /// rounded) in both implementors.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a small integer.
    #[inline]
    fn int(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }
}

impl Real for f64 {
    fn unit_tol() -> Self {
        1e-14
    }
    fn identity_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn unit_tol() -> Self {
        1e-6
    }
    fn identity_tol() -> Self {
        1e-3
    }
}

/// Complex coefficient over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cre<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[cfg(test)]
#[inline]
pub(crate) fn clit<T: Real>(x: f64) -> C<T> {
    Complex::new(T::lit(x), T::zero())
}
