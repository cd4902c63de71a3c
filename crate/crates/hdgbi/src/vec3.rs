//! Small fixed-size 3-vector over the solver scalar, plus a complex variant
//! for field values.

use crate::scalar::{Cplx, Real};
use num_complex::Complex;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Real 3-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        Self::new(T::lit(x), T::lit(y), T::lit(z))
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm2(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm2().sqrt()
    }

    #[inline]
    pub fn normalized(self) -> Self {
        self / self.norm()
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    /// Componentwise promotion to a complex vector.
    #[inline]
    pub fn to_complex(self) -> CVec3<T> {
        CVec3::new(
            Complex::new(self.x, T::zero()),
            Complex::new(self.y, T::zero()),
            Complex::new(self.z, T::zero()),
        )
    }

    /// Distance to another point.
    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

/// Complex-valued 3-vector (field value at a point).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec3<T> {
    pub x: Cplx<T>,
    pub y: Cplx<T>,
    pub z: Cplx<T>,
}

impl<T: Real> CVec3<T> {
    #[inline]
    pub fn new(x: Cplx<T>, y: Cplx<T>, z: Cplx<T>) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z)
    }

    /// Unconjugated dot product with a real vector.
    #[inline]
    pub fn dot_real(self, o: Vec3<T>) -> Cplx<T> {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Unconjugated (bilinear) dot product.
    #[inline]
    pub fn dot(self, o: Self) -> Cplx<T> {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Cross product with a real vector on the right.
    #[inline]
    pub fn cross_real(self, o: Vec3<T>) -> Self {
        self.cross(o.to_complex())
    }

    #[inline]
    pub fn scale(self, s: Cplx<T>) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    /// Squared Euclidean norm, `sum |c_i|^2`.
    #[inline]
    pub fn norm2(self) -> T {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }
}

impl<T: Real> Add for CVec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for CVec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for CVec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> AddAssign for CVec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

/// `n x v` for a real normal and complex field value.
#[inline]
pub fn n_cross<T: Real>(n: Vec3<T>, v: CVec3<T>) -> CVec3<T> {
    n.to_complex().cross(v)
}

/// Tangential projection `n x v x n = v - n (n . v)`.
#[inline]
pub fn tangential<T: Real>(n: Vec3<T>, v: CVec3<T>) -> CVec3<T> {
    let nv = v.dot_real(n);
    v - n.to_complex().scale(nv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_follows_right_hand_rule() {
        let x = Vec3::<f64>::new(1.0, 0.0, 0.0);
        let y = Vec3::new(0.0, 1.0, 0.0);
        assert_eq!(x.cross(y), Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn tangential_removes_normal_part() {
        let n = Vec3::<f64>::new(0.0, 0.0, 1.0);
        let v = Vec3::new(1.0, 2.0, 3.0).to_complex();
        let t = tangential(n, v);
        assert_eq!(t.z.re, 0.0);
        assert_eq!(t.x.re, 1.0);
        assert_eq!(t.y.re, 2.0);
    }

    #[test]
    fn double_twist_is_negated_tangential() {
        // n x (n x v) = -(v - n(n.v))
        let n = Vec3::<f64>::new(0.6, 0.8, 0.0);
        let v = CVec3::new(
            num_complex::Complex::new(1.0, -2.0),
            num_complex::Complex::new(0.5, 0.25),
            num_complex::Complex::new(-1.5, 3.0),
        );
        let twice = n_cross(n, n_cross(n, v));
        let tang = tangential(n, v);
        let diff = twice + tang;
        assert!(diff.norm2().sqrt() < 1e-14);
    }
}
