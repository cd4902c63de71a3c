//! Plane-wave excitation in the normalized field convention.
//!
//! The incident fields are E = E0 p exp(-j k0 k.r) and, after absorbing the
//! free-space impedance into H, H = E0 (k x p) exp(-j k0 k.r), so both
//! carry the same amplitude. Time convention exp(+j omega t).

use crate::error::PhysicsError;
use crate::physics::C0;
use crate::scalar::{jay, Cplx, Real};
use crate::vec3::{CVec3, Vec3};

/// Linearly polarized plane wave.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave<T: Real> {
    /// Frequency in Hz.
    pub frequency: T,
    /// Electric field amplitude E0 in V/m.
    pub amplitude: T,
    /// Unit vector along the electric field.
    pub polarization: Vec3<T>,
    /// Unit vector along the propagation direction.
    pub direction: Vec3<T>,
}

impl<T: Real> PlaneWave<T> {
    /// Validates unit length of both vectors and their orthogonality.
    pub fn new(
        frequency: T,
        amplitude: T,
        polarization: Vec3<T>,
        direction: Vec3<T>,
    ) -> Result<Self, PhysicsError> {
        let tol = T::lit(1e-12);
        if frequency <= T::zero() {
            return Err(PhysicsError::InvalidWave("frequency must be positive"));
        }
        if (polarization.norm() - T::one()).abs() > tol {
            return Err(PhysicsError::InvalidWave("polarization is not unit length"));
        }
        if (direction.norm() - T::one()).abs() > tol {
            return Err(PhysicsError::InvalidWave("direction is not unit length"));
        }
        if polarization.dot(direction).abs() > tol {
            return Err(PhysicsError::InvalidWave(
                "polarization is not orthogonal to the direction",
            ));
        }
        Ok(Self {
            frequency,
            amplitude,
            polarization,
            direction,
        })
    }

    /// Free-space wavenumber k0 = 2 pi f / c0.
    pub fn k0(&self) -> T {
        T::lit(2.0) * T::PI() * self.frequency / T::lit(C0)
    }

    /// Free-space wavelength.
    pub fn lambda0(&self) -> T {
        T::lit(C0) / self.frequency
    }

    fn phase(&self, r: Vec3<T>) -> Cplx<T> {
        (-jay::<T>() * self.k0() * self.direction.dot(r)).exp()
    }

    /// Normalized incident electric field at `r`.
    pub fn e_inc(&self, r: Vec3<T>) -> CVec3<T> {
        self.polarization
            .to_complex()
            .scale(self.phase(r) * self.amplitude)
    }

    /// Normalized incident magnetic field at `r` (impedance absorbed).
    pub fn h_inc(&self, r: Vec3<T>) -> CVec3<T> {
        self.direction
            .cross(self.polarization)
            .to_complex()
            .scale(self.phase(r) * self.amplitude)
    }
}
