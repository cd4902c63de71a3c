//! Excitation, far-field post-processing, and analytic reference solutions.
//!
//! Houses the plane-wave excitation in the normalized field convention
//! (H carries the free-space impedance, so `|E| = |H|` for a plane wave),
//! the radiation integral turning equivalent surface currents into bistatic
//! RCS samples, the Mie series for a dielectric-coated PEC sphere used as
//! the accuracy oracle, and the L2 relative RCS error metric.

mod farfield;
mod mie;
mod wave;

pub use farfield::{error_sigma, far_field, FarField, FarFieldSample};
pub use mie::{mie_coated_pec_sphere, mie_coated_pec_sphere_with_order, MieSolution};
pub use wave::PlaneWave;

/// Speed of light in vacuum (m/s, exact).
pub const C0: f64 = 299_792_458.0;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability (H/m).
pub const MU0: f64 = 1.256_637_062_12e-6;
