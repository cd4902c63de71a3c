//! Hybridizable discontinuous Galerkin discretization of the first-order
//! Maxwell system
//!
//! ```text
//!   j k0 eps_r E - curl H = 0,      j k0 mu_r H + curl E = 0
//! ```
//!
//! on tetrahedra, with edge elements for E and H and a single tangential
//! trace field Lambda on the mesh skeleton (stabilization parameter 1).
//! Static condensation eliminates the volume unknowns element by element,
//! leaving the complex-symmetric Schur complement
//!
//! ```text
//!   Q = L - sum_i B_i A_i^{-1} F_i
//! ```
//!
//! on the trace space, assembled here as a sparse matrix together with the
//! per-element solve data needed to recover E and H from Lambda.

mod element;
mod system;

pub use element::{element_faces, element_operators, ElementFace, ElementOperators};
pub use system::{assemble, HdgSystem};
