//! Scalar abstraction for the numeric core.
//!
//! All circuit math is generic over a real floating-point scalar; complex
//! arithmetic is `num_complex::Complex<T>` on top of it. Concrete aliases
//! for the common `f64` instantiation live at the crate root.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar type of the toolkit: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Lossy cast from `f64` used for literals and tolerances.
#[inline]
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 literal")
}

/// Complex value from `f64` parts.
#[inline]
pub(crate) fn cplx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}

/// Purely imaginary `j*omega`, the Fourier point on the Laplace axis.
#[inline]
pub fn jomega<T: Scalar>(omega: T) -> Complex<T> {
    Complex::new(T::zero(), omega)
}

/// Finiteness check that sidesteps the `ComplexFloat` bound.
#[inline]
pub(crate) fn finite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Angular frequency from a frequency in Hz.
#[inline]
pub fn omega_from_hz<T: Scalar>(hz: T) -> T {
    T::TAU() * hz
}

/// Frequency in Hz from an angular frequency.
#[inline]
pub fn hz_from_omega<T: Scalar>(omega: T) -> T {
    omega / T::TAU()
}
