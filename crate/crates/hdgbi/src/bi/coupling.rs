//! Rectangular coupling blocks between the hybrid trace unknown and the
//! equivalent surface currents.
//!
//! On every radiating face the trace test functions eta_p and the RWG
//! currents j_n, m_n share a triangle with domain-outward normal n. The
//! combined system needs four blocks, all built from two raw pairings
//!
//! ```text
//!   E_J[p, n] = <eta_p, n x j_n>,    E_M[p, n] = <eta_p, m_n>,
//! ```
//!
//! as
//!
//! ```text
//!   D^{Lambda J} = -E_J,          D^{J Lambda} = +1/2 E_J^T,
//!   D^{Lambda M} = -E_M,          D^{M Lambda} = +1/2 E_M^T.
//! ```
//!
//! The transposes follow from <j, n x eta> = -<eta, n x j> and the symmetry
//! of <m, eta>; the tangential projector drops because both factors are
//! tangential. Each pairing lives on a single face, so the blocks are
//! face-local: a current column touches at most its two triangles (6 trace
//! rows), a trace column at most the currents of its own triangle's edges.

use super::surface::Surface;
use crate::basis::FaceBasis;
use crate::error::AssemblyError;
use crate::mesh::Skeleton;
use crate::quadrature::tri_rule;
use crate::scalar::{Cplx, Real};
use crate::sparse::{Accumulator, CscMatrix};
use crate::vec3::Vec3;

/// Quadrature degree; the integrands are quadratic, so this is exact.
const QUAD_DEGREE: usize = 4;

/// Trace-to-current coupling blocks of the combined system.
pub struct Coupling<T> {
    /// Trace rows, electric-current columns (n_hdg x n_rwg).
    pub d_lj: CscMatrix<T>,
    /// Trace rows, magnetic-current columns (n_hdg x n_rwg).
    pub d_lm: CscMatrix<T>,
    /// Electric-current rows, trace columns (n_rwg x n_hdg).
    pub d_jl: CscMatrix<T>,
    /// Magnetic-current rows, trace columns (n_rwg x n_hdg).
    pub d_ml: CscMatrix<T>,
}

/// Assemble the four coupling blocks for a skeleton and its radiating
/// surface. `surf` must be the skeleton's own surface so triangle indices,
/// edge-pair numbering, and outward normals agree.
pub fn assemble_coupling<T: Real>(
    sk: &Skeleton<T>,
    surf: &Surface<T>,
) -> Result<Coupling<T>, AssemblyError> {
    let rule = tri_rule::<T>(QUAD_DEGREE)?;
    let n_hdg = sk.n_hdg();
    let n_rwg = surf.n_rwg();
    let half = T::lit(0.5);
    let mut lj = Accumulator::new(n_hdg, n_rwg);
    let mut lm = Accumulator::new(n_hdg, n_rwg);
    let mut jl = Accumulator::new(n_rwg, n_hdg);
    let mut ml = Accumulator::new(n_rwg, n_hdg);
    for (t, tri) in surf.tris.iter().enumerate() {
        let fi = surf.skeleton_faces[t];
        assert!(fi != usize::MAX, "coupling needs a mesh-backed surface");
        let face = &sk.faces[fi];
        // Canonical (ascending) vertex order fixes the trace basis signs;
        // the surface triangle is the same physical face.
        let fb = FaceBasis::new([
            surf.verts[face.verts[0]],
            surf.verts[face.verts[1]],
            surf.verts[face.verts[2]],
        ]);
        let two_a = T::lit(2.0) * fb.area;
        let base = sk.hdof_base[fi];
        for q in &rule.points {
            let r = fb.point(q.bary);
            let w = q.weight * two_a;
            let eta: [Vec3<T>; 3] = std::array::from_fn(|p| fb.eval(p, q.bary));
            for slot in &surf.tri_rwg[t] {
                let Some((n, _)) = *slot else { continue };
                let jv = surf.rwg_value(n, t, r);
                let nxj = tri.normal.cross(jv);
                for p in 0..3 {
                    let vj = Cplx::new(eta[p].dot(nxj) * w, T::zero());
                    let vm = Cplx::new(eta[p].dot(jv) * w, T::zero());
                    lj.add(base + p, n, -vj);
                    lm.add(base + p, n, -vm);
                    jl.add(n, base + p, vj * half);
                    ml.add(n, base + p, vm * half);
                }
            }
        }
    }
    Ok(Coupling {
        d_lj: lj.build(),
        d_lm: lm.build(),
        d_jl: jl.build(),
        d_ml: ml.build(),
    })
}
