//! Local finite element bases.
//!
//! Volume fields use lowest-order curl-conforming edge elements on
//! tetrahedra (W_e = l_a grad l_b - l_b grad l_a on edge e = (a,b)); hybrid
//! face traces use the matching 2D edge elements built from the face
//! barycentric coordinates. Both are directed from the smaller to the larger
//! global vertex id, which makes tangential traces agree across shared faces
//! without bookkeeping. The edge degree of freedom is the line integral of
//! the field along the directed edge.

use crate::mesh::{TET_EDGES, TET_FACES};
use crate::scalar::Real;
use crate::vec3::Vec3;

/// Local edges of a triangular face, as index pairs into its vertex triple.
/// With face vertices sorted by global id, every pair is already directed
/// low to high.
pub const FACE_EDGES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Curl-conforming edge basis on one tetrahedron.
#[derive(Clone, Debug)]
pub struct TetBasis<T> {
    pub verts: [Vec3<T>; 4],
    /// Barycentric gradients, constant over the element.
    pub grads: [Vec3<T>; 4],
    pub volume: T,
    /// Local edges redirected so the global vertex id increases.
    pub edges: [(usize, usize); 6],
}

impl<T: Real> TetBasis<T> {
    /// Build the basis; `global_ids` fixes the edge directions.
    pub fn new(verts: [Vec3<T>; 4], global_ids: [usize; 4]) -> Self {
        let e1 = verts[1] - verts[0];
        let e2 = verts[2] - verts[0];
        let e3 = verts[3] - verts[0];
        let six_v = e1.dot(e2.cross(e3));
        let volume = six_v / T::lit(6.0);
        let g1 = e2.cross(e3) / six_v;
        let g2 = e3.cross(e1) / six_v;
        let g3 = e1.cross(e2) / six_v;
        let g0 = -(g1 + g2 + g3);
        let mut edges = TET_EDGES;
        for e in edges.iter_mut() {
            if global_ids[e.0] > global_ids[e.1] {
                *e = (e.1, e.0);
            }
        }
        Self {
            verts,
            grads: [g0, g1, g2, g3],
            volume,
            edges,
        }
    }

    /// Basis function `m` at barycentric coordinates `bary`.
    pub fn eval(&self, m: usize, bary: [T; 4]) -> Vec3<T> {
        let (a, b) = self.edges[m];
        self.grads[b] * bary[a] - self.grads[a] * bary[b]
    }

    /// Curl of basis function `m`, constant over the element.
    pub fn curl(&self, m: usize) -> Vec3<T> {
        let (a, b) = self.edges[m];
        self.grads[a].cross(self.grads[b]) * T::lit(2.0)
    }

    /// Physical point of barycentric coordinates `bary`.
    pub fn point(&self, bary: [T; 4]) -> Vec3<T> {
        self.verts[0] * bary[0]
            + self.verts[1] * bary[1]
            + self.verts[2] * bary[2]
            + self.verts[3] * bary[3]
    }

    /// Barycentric coordinates of a physical point.
    pub fn bary_at(&self, r: Vec3<T>) -> [T; 4] {
        let d = r - self.verts[0];
        let l1 = self.grads[1].dot(d);
        let l2 = self.grads[2].dot(d);
        let l3 = self.grads[3].dot(d);
        [T::one() - l1 - l2 - l3, l1, l2, l3]
    }

    /// Global vertex pairs of the directed local edges.
    pub fn directed_edge(&self, m: usize, tet: &[usize; 4]) -> (usize, usize) {
        let (a, b) = self.edges[m];
        (tet[a], tet[b])
    }
}

/// Tangential edge basis on one triangular face.
///
/// `verts` must be in ascending global-id order (the canonical face
/// orientation of the skeleton), so the three basis functions are identical
/// for both tetrahedra sharing the face.
#[derive(Clone, Debug)]
pub struct FaceBasis<T> {
    pub verts: [Vec3<T>; 3],
    /// Right-handed normal of the vertex order (not necessarily outward).
    pub normal: Vec3<T>,
    pub area: T,
    /// In-plane barycentric gradients.
    pub sgrads: [Vec3<T>; 3],
}

impl<T: Real> FaceBasis<T> {
    pub fn new(verts: [Vec3<T>; 3]) -> Self {
        let cross = (verts[1] - verts[0]).cross(verts[2] - verts[0]);
        let two_a = cross.norm();
        let normal = cross / two_a;
        let area = two_a * T::lit(0.5);
        // grad mu_i = n x e_i / (2A), e_i the opposite edge oriented so the
        // gradient points toward vertex i.
        let e0 = verts[2] - verts[1];
        let e1 = verts[0] - verts[2];
        let e2 = verts[1] - verts[0];
        let sgrads = [
            normal.cross(e0) / two_a,
            normal.cross(e1) / two_a,
            normal.cross(e2) / two_a,
        ];
        Self {
            verts,
            normal,
            area,
            sgrads,
        }
    }

    /// Basis function `k` at face barycentric coordinates `bary`.
    pub fn eval(&self, k: usize, bary: [T; 3]) -> Vec3<T> {
        let (a, b) = FACE_EDGES[k];
        self.sgrads[b] * bary[a] - self.sgrads[a] * bary[b]
    }

    /// Physical point of face barycentric coordinates.
    pub fn point(&self, bary: [T; 3]) -> Vec3<T> {
        self.verts[0] * bary[0] + self.verts[1] * bary[1] + self.verts[2] * bary[2]
    }

    /// Face barycentric coordinates of an in-plane physical point.
    pub fn bary_at(&self, r: Vec3<T>) -> [T; 3] {
        let d = r - self.verts[0];
        let l1 = self.sgrads[1].dot(d);
        let l2 = self.sgrads[2].dot(d);
        [T::one() - l1 - l2, l1, l2]
    }
}

/// Local face vertices of tet face `f`, returned with their barycentric
/// slots: `bary[(i)]` of the face maps to volume barycentric `local[i]`.
pub fn face_local_vertices(f: usize) -> [usize; 3] {
    TET_FACES[f]
}
