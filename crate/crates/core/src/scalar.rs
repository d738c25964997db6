use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::quaternion::Quaternion;

/// Scalars of a (possibly noncommutative) division ring over the reals.
///
/// Elimination code is written once against this trait and instantiated for
/// both [`Quaternion`] and [`Complex64`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    /// Euclidean modulus; multiplicative.
    fn modulus(&self) -> f64;
    /// `None` for zero.
    fn try_inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn is_finite(&self) -> bool;
    /// Largest absolute real component.
    fn max_abs(&self) -> f64;
}

impl Scalar for Quaternion {
    #[inline]
    fn zero() -> Self {
        Quaternion::ZERO
    }
    #[inline]
    fn one() -> Self {
        Quaternion::ONE
    }
    #[inline]
    fn from_real(r: f64) -> Self {
        Quaternion::real(r)
    }
    #[inline]
    fn modulus(&self) -> f64 {
        self.norm()
    }
    #[inline]
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    #[inline]
    fn conj(&self) -> Self {
        Quaternion::conj(*self)
    }
    #[inline]
    fn is_finite(&self) -> bool {
        Quaternion::is_finite(*self)
    }
    #[inline]
    fn max_abs(&self) -> f64 {
        self.max_abs_diff(Quaternion::ZERO)
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    #[inline]
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    #[inline]
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    #[inline]
    fn modulus(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }
    #[inline]
    fn try_inv(&self) -> Option<Self> {
        let n2 = self.re * self.re + self.im * self.im;
        (n2 != 0.0).then(|| Complex64::new(self.re / n2, -self.im / n2))
    }
    #[inline]
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    #[inline]
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    #[inline]
    fn max_abs(&self) -> f64 {
        self.re.abs().max(self.im.abs())
    }
}
