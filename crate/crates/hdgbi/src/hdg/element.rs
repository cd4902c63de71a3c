//! Per-element HDG matrices.
//!
//! For one tetrahedron with edge basis W and face trace basis eta, stacking
//! the unknowns as [E; H] and the four face traces as a 12-vector Lambda:
//!
//! ```text
//!   A = [ j k0 eps_r M   -K          ]        F = [  <n x W_m, eta_n>  ]
//!       [ K^T             j k0 mu_r M + S ]       [ -<(W_m)_t, eta_n>  ]
//! ```
//!
//! with M the edge mass matrix, K_{mn} = (curl W_m, W_n), and S the face
//! mass of the tangential traces (stabilization parameter 1). The trace-side
//! test equations use B = F^T diag(I, -I), which is exploited during global
//! assembly instead of being stored.

use crate::basis::{FaceBasis, TetBasis};
use crate::dense::DMat;
use crate::error::AssemblyError;
use crate::mesh::{Material, Mesh, Skeleton};
use crate::quadrature::{TetRule, TriRule};
use crate::scalar::{jay, Cplx, Real};
use crate::vec3::Vec3;

/// One face of an element, as seen from that element.
#[derive(Clone, Debug)]
pub struct ElementFace<T> {
    /// Canonical trace basis (face vertices ascending by global id).
    pub basis: FaceBasis<T>,
    /// Outward unit normal of this element on the face.
    pub outward: Vec3<T>,
    /// First of the face's three consecutive hybrid unknowns.
    pub hdof: usize,
}

/// Volume block, trace coupling, and the global trace numbering of one
/// element.
#[derive(Clone, Debug)]
pub struct ElementOperators<T> {
    pub a: DMat<T>,
    pub f: DMat<T>,
    pub dofs: [usize; 12],
}

/// The four faces of tetrahedron `ti` with outward normals and hybrid
/// numbering taken from the skeleton.
pub fn element_faces<T: Real>(
    mesh: &Mesh<T>,
    sk: &Skeleton<T>,
    ti: usize,
) -> [ElementFace<T>; 4] {
    std::array::from_fn(|lf| {
        let gf = sk.tet_faces[ti][lf];
        let face = &sk.faces[gf];
        let verts = [
            mesh.vertices[face.verts[0]],
            mesh.vertices[face.verts[1]],
            mesh.vertices[face.verts[2]],
        ];
        let outward = if face.tets[0] == ti {
            face.normal
        } else {
            -face.normal
        };
        ElementFace {
            basis: FaceBasis::new(verts),
            outward,
            hdof: sk.hdof_base[gf],
        }
    })
}

/// Assemble the element matrices of one tetrahedron.
pub fn element_operators<T: Real>(
    tb: &TetBasis<T>,
    faces: &[ElementFace<T>; 4],
    material: Material<T>,
    k0: T,
    vol_rule: &TetRule<T>,
    face_rule: &TriRule<T>,
) -> Result<ElementOperators<T>, AssemblyError> {
    if !(k0 > T::zero()) {
        return Err(AssemblyError::NonPositiveFrequency {
            f: k0.to_f64().unwrap_or(f64::NAN),
        });
    }
    let six_v = T::lit(6.0) * tb.volume;

    // Volume terms: edge mass M and curl pairing K.
    let mut m = [[T::zero(); 6]; 6];
    let mut k = [[T::zero(); 6]; 6];
    for p in &vol_rule.points {
        let w: [Vec3<T>; 6] = std::array::from_fn(|e| tb.eval(e, p.bary));
        for i in 0..6 {
            for j in 0..6 {
                m[i][j] += w[i].dot(w[j]) * p.weight;
                k[i][j] += tb.curl(i).dot(w[j]) * p.weight;
            }
        }
    }
    for i in 0..6 {
        for j in 0..6 {
            m[i][j] *= six_v;
            k[i][j] *= six_v;
        }
    }

    // Face terms: stabilization S and trace coupling F.
    let mut s = [[T::zero(); 6]; 6];
    let mut fe = [[T::zero(); 12]; 6];
    let mut fh = [[T::zero(); 12]; 6];
    for (lf, ef) in faces.iter().enumerate() {
        let n = ef.outward;
        let two_a = T::lit(2.0) * ef.basis.area;
        for p in &face_rule.points {
            let pt = ef.basis.point(p.bary);
            let vb = tb.bary_at(pt);
            let wq: [Vec3<T>; 6] = std::array::from_fn(|e| {
                let w = tb.eval(e, vb);
                w - n * n.dot(w) // tangential part
            });
            let eta: [Vec3<T>; 3] = std::array::from_fn(|t| ef.basis.eval(t, p.bary));
            let wt = p.weight * two_a;
            for i in 0..6 {
                for j in 0..6 {
                    s[i][j] += wq[i].dot(wq[j]) * wt;
                }
                for t in 0..3 {
                    // n x W keeps only the tangential part of W.
                    fe[i][3 * lf + t] += n.cross(wq[i]).dot(eta[t]) * wt;
                    fh[i][3 * lf + t] -= wq[i].dot(eta[t]) * wt;
                }
            }
        }
    }

    let je = jay::<T>() * Cplx::new(k0, T::zero()) * material.eps_r;
    let jm = jay::<T>() * Cplx::new(k0, T::zero()) * material.mu_r;
    let mut a = DMat::zeros(12, 12);
    for i in 0..6 {
        for j in 0..6 {
            a.set(i, j, je * m[i][j]);
            a.set(i, 6 + j, -Cplx::new(k[i][j], T::zero()));
            a.set(6 + i, j, Cplx::new(k[j][i], T::zero()));
            a.set(6 + i, 6 + j, jm * m[i][j] + Cplx::new(s[i][j], T::zero()));
        }
    }
    let mut f = DMat::zeros(12, 12);
    for i in 0..6 {
        for c in 0..12 {
            f.set(i, c, Cplx::new(fe[i][c], T::zero()));
            f.set(6 + i, c, Cplx::new(fh[i][c], T::zero()));
        }
    }
    let dofs: [usize; 12] = std::array::from_fn(|c| faces[c / 3].hdof + c % 3);
    Ok(ElementOperators { a, f, dofs })
}
