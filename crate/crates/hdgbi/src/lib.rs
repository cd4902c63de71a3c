//! Frequency-domain electromagnetic scattering solver.
//!
//! A hybridizable discontinuous Galerkin (HDG) discretization of the Maxwell
//! curl-curl system on a tetrahedral volume mesh is closed by an exact
//! boundary-integral (BI) radiation condition on the outer surface. Static
//! condensation reduces the volume unknowns to a hybrid trace field on the
//! mesh skeleton; coupling that Schur complement to a combined-field integral
//! equation in RWG surface currents yields a reduced system of boundary size,
//! solved with restarted GMRES around a sparse LU of the skeleton block.
//!
//! Fields are normalized so that `|E| = |H|` for a plane wave (the free-space
//! impedance is absorbed into E), time convention `exp(+j omega t)`, Green
//! function `exp(-j k0 R) / (4 pi R)`.
//!
//! The crate is generic over the real scalar type (`f32`/`f64`) through the
//! [`Real`] trait; `f64` aliases are exported at the crate root.

pub mod basis;
pub mod bi;
pub mod dense;
pub mod error;
pub mod hdg;
pub mod mesh;
pub mod meshgen;
pub mod physics;
pub mod quadrature;
pub mod scalar;
pub mod sparse;
pub mod vec3;

pub use error::{AssemblyError, ConfigError, MeshError, PhysicsError, SolveError};
pub use scalar::{Cplx, Real};
pub use vec3::Vec3;

/// f64 mesh.
pub type Mesh64 = mesh::Mesh<f64>;
/// f64 skeleton.
pub type Skeleton64 = mesh::Skeleton<f64>;
/// f64 condensed HDG system.
pub type HdgSystem64 = hdg::HdgSystem<f64>;
/// f64 complex scalar.
pub type C64 = num_complex::Complex<f64>;
/// f64 3-vector.
pub type Vec364 = Vec3<f64>;
