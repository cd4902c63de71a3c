//! Boundary-integral discretization of the exterior radiation condition.
//!
//! The radiating surface carries equivalent electric and magnetic currents
//! expanded in div-conforming edge-pair (RWG) functions. Combined-field
//! integral operators built from the free-space Green function G_0 =
//! e^{-jk_0 R} / (4 pi R) tie those currents to the hybrid trace unknowns,
//! closing the truncated volume problem with an exact (non-reflecting)
//! boundary condition.

mod coupling;
mod excitation;
mod io;
mod kernels;
mod operators;
mod statics;
mod surface;

pub use coupling::{assemble_coupling, Coupling};
pub use excitation::assemble_rhs;
pub use io::{read_hbic, write_hbic};
pub use kernels::{
    grad_green, grad_green_smooth, green, green_smooth, moment_g0_near, moments_far, moments_near,
    SourceMoments,
};
pub use operators::{assemble_bi, BiParams, BiSystem};
pub use statics::{tri_statics, TriStatics};
pub use surface::{Rwg, SurfTri, Surface};
