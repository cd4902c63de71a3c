//! Triangulated radiating surface and its div-conforming edge-pair basis.
//!
//! Every interior edge of the surface carries one basis function supported on
//! the two adjacent triangles (f = +- l/(2A) (r - p) with p the free vertex),
//! the standard lowest-order div-conforming pair. Its degree of freedom is
//! the net normal current crossing the edge, so interpolation evaluates the
//! edge flux. Pairs are enumerated in a canonical order, sorted by ascending
//! (min vertex id, max vertex id) of the shared edge; the plus triangle is
//! the one with the lower triangle index.

use crate::error::MeshError;
use crate::mesh::{FaceClass, Mesh, Skeleton};
use crate::quadrature::gauss_legendre_01;
use crate::scalar::{Cplx, Real};
use crate::vec3::{CVec3, Vec3};
use std::collections::BTreeMap;

/// Oriented surface triangle: right-handed vertex order matches `normal`,
/// which points into the exterior (away from the meshed volume).
#[derive(Clone, Debug)]
pub struct SurfTri<T> {
    pub v: [usize; 3],
    pub normal: Vec3<T>,
    pub area: T,
    pub centroid: Vec3<T>,
}

/// One edge-pair basis function.
#[derive(Clone, Debug)]
pub struct Rwg<T> {
    /// Shared edge, vertex ids ascending.
    pub edge: [usize; 2],
    pub tri_plus: usize,
    pub tri_minus: usize,
    /// Free vertex (opposite the edge) in the plus / minus triangle.
    pub free_plus: usize,
    pub free_minus: usize,
    /// Shared edge length.
    pub len: T,
    /// Edge midpoint (used for distance-based preconditioner patterns).
    pub mid: Vec3<T>,
}

/// Closed (or open, for operator tests) triangulated surface with its
/// edge-pair basis and an optional link back to skeleton faces.
#[derive(Clone, Debug)]
pub struct Surface<T> {
    pub verts: Vec<Vec3<T>>,
    pub tris: Vec<SurfTri<T>>,
    pub rwg: Vec<Rwg<T>>,
    /// Skeleton face index per triangle (`usize::MAX` when not mesh-backed).
    pub skeleton_faces: Vec<usize>,
    /// Per triangle, per local edge k = (v[k], v[(k+1)%3]): the pair index
    /// and whether this triangle is its plus side. `None` on open edges.
    pub tri_rwg: Vec<[Option<(usize, bool)>; 3]>,
    /// True when every edge borders exactly two triangles.
    pub closed: bool,
}

impl<T: Real> Surface<T> {
    /// Build from raw triangles whose right-handed vertex order gives the
    /// exterior normal. Open edges are allowed (they carry no basis).
    pub fn from_tris(verts: Vec<Vec3<T>>, tris: &[[usize; 3]]) -> Result<Self, MeshError> {
        Self::build(verts, tris, vec![usize::MAX; tris.len()])
    }

    /// Build from the radiating faces of a mesh skeleton. Triangles keep the
    /// skeleton's canonical (ascending) vertex ids, reordered so the
    /// right-handed normal is the skeleton's outward face normal. The
    /// radiating surface must be closed.
    pub fn from_skeleton(mesh: &Mesh<T>, sk: &Skeleton<T>) -> Result<Self, MeshError> {
        let mut tris = Vec::new();
        let mut faces = Vec::new();
        for (fi, face) in sk.faces.iter().enumerate() {
            if face.class != FaceClass::Radiating {
                continue;
            }
            let mut v = face.verts;
            let rh = (mesh.vertices[v[1]] - mesh.vertices[v[0]])
                .cross(mesh.vertices[v[2]] - mesh.vertices[v[0]]);
            if rh.dot(face.normal) < T::zero() {
                v.swap(1, 2);
            }
            tris.push(v);
            faces.push(fi);
        }
        let surf = Self::build(mesh.vertices.clone(), &tris, faces)?;
        if !surf.closed {
            return Err(MeshError::OpenRadiatingSurface { count: 1 });
        }
        debug_assert_eq!(surf.rwg.len(), sk.counts().n_rwg);
        Ok(surf)
    }

    fn build(
        verts: Vec<Vec3<T>>,
        tri_ids: &[[usize; 3]],
        skeleton_faces: Vec<usize>,
    ) -> Result<Self, MeshError> {
        let mut tris = Vec::with_capacity(tri_ids.len());
        for (ti, ids) in tri_ids.iter().enumerate() {
            let [a, b, c] = *ids;
            let cross = (verts[b] - verts[a]).cross(verts[c] - verts[a]);
            let two_a = cross.norm();
            let h = verts[a]
                .dist(verts[b])
                .max(verts[b].dist(verts[c]))
                .max(verts[c].dist(verts[a]));
            if two_a <= T::lit(1e-12) * h * h {
                return Err(MeshError::DegenerateTriangle {
                    tri: ti,
                    area: (two_a * T::lit(0.5)).to_f64().unwrap_or(0.0),
                });
            }
            tris.push(SurfTri {
                v: *ids,
                normal: cross / two_a,
                area: two_a * T::lit(0.5),
                centroid: (verts[a] + verts[b] + verts[c]) / T::lit(3.0),
            });
        }
        // Edge key -> incident (triangle, local edge) list, keys ascending.
        let mut edges: BTreeMap<[usize; 2], Vec<(usize, usize)>> = BTreeMap::new();
        for (ti, tri) in tris.iter().enumerate() {
            for k in 0..3 {
                let a = tri.v[k];
                let b = tri.v[(k + 1) % 3];
                let key = [a.min(b), a.max(b)];
                edges.entry(key).or_default().push((ti, k));
            }
        }
        let mut rwg = Vec::new();
        let mut tri_rwg = vec![[None; 3]; tris.len()];
        let mut closed = true;
        for (key, inc) in &edges {
            match inc.len() {
                1 => closed = false,
                2 => {
                    let (mut t0, mut k0) = inc[0];
                    let (mut t1, mut k1) = inc[1];
                    if t0 > t1 {
                        std::mem::swap(&mut t0, &mut t1);
                        std::mem::swap(&mut k0, &mut k1);
                    }
                    let n = rwg.len();
                    tri_rwg[t0][k0] = Some((n, true));
                    tri_rwg[t1][k1] = Some((n, false));
                    rwg.push(Rwg {
                        edge: *key,
                        tri_plus: t0,
                        tri_minus: t1,
                        free_plus: tris[t0].v[(k0 + 2) % 3],
                        free_minus: tris[t1].v[(k1 + 2) % 3],
                        len: verts[key[0]].dist(verts[key[1]]),
                        mid: (verts[key[0]] + verts[key[1]]) * T::lit(0.5),
                    });
                }
                count => return Err(MeshError::NonManifoldFace { count }),
            }
        }
        Ok(Self {
            verts,
            tris,
            rwg,
            skeleton_faces,
            tri_rwg,
            closed,
        })
    }

    pub fn n_rwg(&self) -> usize {
        self.rwg.len()
    }

    /// Surface-current unknowns: electric plus magnetic coefficients.
    pub fn n_bi(&self) -> usize {
        2 * self.rwg.len()
    }

    pub fn tri_verts(&self, t: usize) -> [Vec3<T>; 3] {
        let v = self.tris[t].v;
        [self.verts[v[0]], self.verts[v[1]], self.verts[v[2]]]
    }

    /// Sign (+1 plus side, -1 minus side) and free vertex of pair `n` on
    /// triangle `t`. Panics if `t` is not in the support.
    pub fn rwg_side(&self, n: usize, t: usize) -> (T, Vec3<T>) {
        let p = &self.rwg[n];
        if t == p.tri_plus {
            (T::one(), self.verts[p.free_plus])
        } else {
            assert_eq!(t, p.tri_minus, "triangle not in pair support");
            (-T::one(), self.verts[p.free_minus])
        }
    }

    /// Basis value of pair `n` on triangle `t` at physical point `r`.
    pub fn rwg_value(&self, n: usize, t: usize, r: Vec3<T>) -> Vec3<T> {
        let (sgn, p) = self.rwg_side(n, t);
        let half = T::lit(2.0) * self.tris[t].area;
        (r - p) * (sgn * self.rwg[n].len / half)
    }

    /// Surface divergence of pair `n` on triangle `t` (constant).
    pub fn rwg_div(&self, n: usize, t: usize) -> T {
        let (sgn, _) = self.rwg_side(n, t);
        sgn * self.rwg[n].len / self.tris[t].area
    }

    /// In-plane unit normal of the shared edge in the plus triangle,
    /// pointing from plus into minus; the basis has unit flux along it.
    pub fn edge_unit(&self, n: usize) -> Vec3<T> {
        let p = &self.rwg[n];
        let e = (self.verts[p.edge[1]] - self.verts[p.edge[0]]).normalized();
        let mut u = e.cross(self.tris[p.tri_plus].normal);
        if u.dot(p.mid - self.verts[p.free_plus]) < T::zero() {
            u = -u;
        }
        u
    }

    /// Edge-flux interpolation: coefficient per pair is the mean of
    /// `field(tri_plus, r) . u` along the shared edge (8-point Gauss), which
    /// reproduces any expansion in the basis exactly.
    pub fn interpolate<F>(&self, field: F) -> Vec<Cplx<T>>
    where
        F: Fn(usize, Vec3<T>) -> CVec3<T>,
    {
        let gauss = gauss_legendre_01::<T>(8);
        self.rwg
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let a = self.verts[p.edge[0]];
                let b = self.verts[p.edge[1]];
                let u = self.edge_unit(n);
                let mut acc = Cplx::new(T::zero(), T::zero());
                for &(s, w) in &gauss {
                    let r = a + (b - a) * s;
                    acc += field(p.tri_plus, r).dot_real(u) * w;
                }
                acc
            })
            .collect()
    }
}
