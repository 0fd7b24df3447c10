//! Scalar field abstraction.
//!
//! Every construction in this crate works over complex numbers `Complex<T>`
//! whose real part type `T` is any ordered field implementing [`Real`]:
//! `f64`, `f32`, or an exact rational such as `num_rational::Ratio<i64>`.
//! The structural unitaries only ever carry the phase `1`, so monomial
//! comparisons are exact for every choice of `T`; float tolerances only enter
//! through sparse sums.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Real part type of the complex scalars.
pub trait Real:
    Clone
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Clone
        + PartialOrd
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

pub fn one<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

pub fn zero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn from_f64<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(
        T::from_f64(re).expect("real part representable"),
        T::from_f64(im).expect("imaginary part representable"),
    )
}

pub fn from_i64<T: Real>(re: i64, im: i64) -> C<T> {
    Complex::new(
        T::from_i64(re).expect("integer representable"),
        T::from_i64(im).expect("integer representable"),
    )
}

/// `|z| <= tol`, evaluated without square roots so it stays exact over rationals.
pub fn within<T: Real>(z: &C<T>, tol: &T) -> bool {
    if tol.is_zero() {
        return is_zero(z);
    }
    z.norm_sqr() <= tol.clone() * tol.clone()
}

pub fn is_zero<T: Real>(z: &C<T>) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// Modulus as `f64`, used for residuals and report values.
pub fn modulus<T: Real>(z: &C<T>) -> f64 {
    z.norm_sqr().to_f64().unwrap_or(f64::NAN).sqrt()
}

pub fn to_c64<T: Real>(z: &C<T>) -> Complex<f64> {
    Complex::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}
