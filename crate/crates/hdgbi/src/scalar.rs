//! Real scalar abstraction: the whole solver is generic over `f32`/`f64`.

use num_complex::Complex;

/// Real floating-point scalar the solver is instantiated with.
///
/// The bounds cover everything the numerics need: IEEE arithmetic,
/// constants (pi), conversion from literals, assignment operators,
/// summation, formatting, and thread safety for rayon.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Conversion from an f64 literal. Panics only if the target type cannot
    /// represent any finite approximation, which cannot happen for f32/f64.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal conversion")
    }

    /// Machine epsilon scaled gap used as "exactly representable" tolerance.
    #[inline]
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the solver scalar.
pub type Cplx<T> = Complex<T>;

/// Imaginary unit.
#[inline]
pub fn jay<T: Real>() -> Cplx<T> {
    Complex::new(T::zero(), T::one())
}

/// Real constant as a complex number.
#[inline]
pub fn cre<T: Real>(v: f64) -> Cplx<T> {
    Complex::new(T::lit(v), T::zero())
}
