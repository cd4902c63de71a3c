//! Tetrahedral meshes, their face skeleton, and degree-of-freedom bookkeeping.
//!
//! A mesh is a vertex cloud plus positively oriented tetrahedra with region
//! tags and tagged boundary triangles. The skeleton enumerates unique faces,
//! classifies them (interior / radiating / PEC), fixes the global hybrid
//! unknown numbering (interior and PEC trace unknowns first, radiating-face
//! trace unknowns last), and pairs radiating faces across shared edges into
//! the div-conforming surface-current supports.

mod gmsh;

pub use gmsh::{read_msh, read_msh_str, write_msh};

use crate::error::MeshError;
use crate::scalar::{Cplx, Real};
use crate::vec3::Vec3;
use std::collections::BTreeMap;

/// Default surface tag emitted by the mesh generators for radiating faces.
pub const TAG_RADIATING: i32 = 1;
/// Default surface tag emitted by the mesh generators for PEC faces.
pub const TAG_PEC: i32 = 2;

/// Volume mesh: vertices, positively oriented tetrahedra, region tags,
/// and tagged boundary triangles.
#[derive(Clone, Debug)]
pub struct Mesh<T> {
    pub vertices: Vec<Vec3<T>>,
    pub tets: Vec<[usize; 4]>,
    /// Physical region tag per tetrahedron (keys material lookup).
    pub region_tags: Vec<i32>,
    /// Tagged surface triangles as given in the file (vertex ids unsorted).
    pub surface_tris: Vec<([usize; 3], i32)>,
}

impl<T: Real> Mesh<T> {
    /// Validate raw element data and fix tetrahedron orientation.
    ///
    /// Every tetrahedron is reordered to positive volume; degenerate cells
    /// (|volume| below `1e-12 * longest_edge^3`) and out-of-range vertex
    /// references are rejected.
    pub fn from_raw(
        vertices: Vec<Vec3<T>>,
        mut tets: Vec<[usize; 4]>,
        region_tags: Vec<i32>,
        surface_tris: Vec<([usize; 3], i32)>,
    ) -> Result<Self, MeshError> {
        if tets.is_empty() {
            return Err(MeshError::Empty);
        }
        assert_eq!(tets.len(), region_tags.len(), "region tag per tet");
        let nv = vertices.len();
        for (ti, tet) in tets.iter_mut().enumerate() {
            for &v in tet.iter() {
                if v >= nv {
                    return Err(MeshError::BadVertexRef { tet: ti, vertex: v });
                }
            }
            let vol = signed_volume(&vertices, tet);
            let h = longest_edge(&vertices, tet);
            let tol = T::lit(1e-12) * h * h * h;
            if vol.abs() <= tol {
                return Err(MeshError::DegenerateTet {
                    tet: ti,
                    volume: vol.to_f64().unwrap_or(0.0),
                });
            }
            if vol < T::zero() {
                tet.swap(2, 3);
            }
        }
        for (tri, _) in &surface_tris {
            for &v in tri.iter() {
                if v >= nv {
                    return Err(MeshError::BadVertexRef { tet: usize::MAX, vertex: v });
                }
            }
        }
        Ok(Self {
            vertices,
            tets,
            region_tags,
            surface_tris,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_tets(&self) -> usize {
        self.tets.len()
    }

    /// Volume of tetrahedron `i` (positive after `from_raw`).
    pub fn tet_volume(&self, i: usize) -> T {
        signed_volume(&self.vertices, &self.tets[i])
    }

    pub fn total_volume(&self) -> T {
        (0..self.n_tets()).map(|i| self.tet_volume(i)).sum()
    }

    /// Mean edge length over all tetrahedron edges (with multiplicity).
    pub fn mean_edge_length(&self) -> T {
        let mut acc = T::zero();
        let mut cnt = 0usize;
        for tet in &self.tets {
            for (a, b) in TET_EDGES {
                acc += self.vertices[tet[a]].dist(self.vertices[tet[b]]);
                cnt += 1;
            }
        }
        acc / T::lit(cnt as f64)
    }
}

/// Local edge order of a tetrahedron (vertex index pairs).
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local faces of a tetrahedron; face `k` is opposite vertex `k`.
pub const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

fn signed_volume<T: Real>(vertices: &[Vec3<T>], tet: &[usize; 4]) -> T {
    let a = vertices[tet[1]] - vertices[tet[0]];
    let b = vertices[tet[2]] - vertices[tet[0]];
    let c = vertices[tet[3]] - vertices[tet[0]];
    a.cross(b).dot(c) / T::lit(6.0)
}

fn longest_edge<T: Real>(vertices: &[Vec3<T>], tet: &[usize; 4]) -> T {
    let mut h = T::zero();
    for (a, b) in TET_EDGES {
        let d = vertices[tet[a]].dist(vertices[tet[b]]);
        if d > h {
            h = d;
        }
    }
    h
}

/// Face classification in the skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    /// Shared by two tetrahedra.
    Interior,
    /// Boundary face on the radiating (truncation) surface.
    Radiating,
    /// Boundary face on a perfect electric conductor.
    Pec,
}

/// Unique face of the skeleton.
#[derive(Clone, Debug)]
pub struct Face<T> {
    /// Vertex ids in ascending order (canonical orientation).
    pub verts: [usize; 3],
    pub class: FaceClass,
    /// Adjacent tetrahedra; `tets[1] == usize::MAX` for boundary faces.
    pub tets: [usize; 2],
    /// Surface tag (0 for interior faces).
    pub tag: i32,
    /// Unit normal pointing out of `tets[0]` (domain-outward on boundaries).
    pub normal: Vec3<T>,
    pub area: T,
    pub centroid: Vec3<T>,
}

impl<T: Real> Face<T> {
    pub fn is_boundary(&self) -> bool {
        self.tets[1] == usize::MAX
    }
}

/// One div-conforming surface-current support: two radiating faces sharing
/// an edge. Current flows from `plus` into `minus` across the edge.
#[derive(Clone, Debug)]
pub struct RwgPair<T> {
    /// Shared edge, vertex ids ascending.
    pub edge: [usize; 2],
    /// Face index of the plus triangle.
    pub plus: usize,
    /// Face index of the minus triangle.
    pub minus: usize,
    /// Shared edge length.
    pub len: T,
}

/// Degree-of-freedom bookkeeping derived from a skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DofCounts {
    pub n_tet: usize,
    pub n_face: usize,
    pub n_interior: usize,
    pub n_radiating: usize,
    pub n_pec: usize,
    pub n_rwg: usize,
    /// Hybrid trace unknowns: 3 per face of every class.
    pub n_hdg: usize,
    /// Surface current unknowns: electric + magnetic, 2 per edge pair.
    pub n_bi: usize,
    /// Volume field unknowns: 6 electric + 6 magnetic per tetrahedron.
    pub n_dg: usize,
}

/// Face skeleton with fixed hybrid numbering and edge-pair list.
#[derive(Clone, Debug)]
pub struct Skeleton<T> {
    pub faces: Vec<Face<T>>,
    /// For each tet, its 4 face indices in local face order.
    pub tet_faces: Vec<[usize; 4]>,
    /// First hybrid unknown of each face (3 consecutive per face).
    pub hdof_base: Vec<usize>,
    /// Edge pairs on the radiating surface, ordered by edge vertex ids.
    pub rwg: Vec<RwgPair<T>>,
    /// Radiating-surface edges adjacent to exactly one radiating face.
    pub open_radiating_edges: usize,
    counts: DofCounts,
    /// First hybrid unknown of the radiating block.
    lambda_gamma_base: usize,
}

impl<T: Real> Skeleton<T> {
    pub fn counts(&self) -> DofCounts {
        self.counts
    }

    /// Hybrid unknowns ordered: interior faces, then PEC, then radiating.
    pub fn n_hdg(&self) -> usize {
        self.counts.n_hdg
    }

    pub fn n_bi(&self) -> usize {
        self.counts.n_bi
    }

    /// Offset of the first radiating-face hybrid unknown.
    pub fn lambda_gamma_base(&self) -> usize {
        self.lambda_gamma_base
    }

    /// True if every radiating-surface edge borders exactly two radiating
    /// faces (closed, orientable truncation surface).
    pub fn radiating_surface_closed(&self) -> bool {
        self.open_radiating_edges == 0 && self.counts.n_radiating > 0
    }
}

/// Build the face skeleton: unique faces, classification, hybrid numbering,
/// and radiating edge pairs.
///
/// `radiating_tags` / `pec_tags` classify boundary faces by their surface
/// tag. Every boundary face must carry exactly one classified tag; interior
/// faces must not be tagged.
pub fn build_skeleton<T: Real>(
    mesh: &Mesh<T>,
    radiating_tags: &[i32],
    pec_tags: &[i32],
) -> Result<Skeleton<T>, MeshError> {
    // Canonical face key -> adjacency.
    let mut adjacency: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for (ti, tet) in mesh.tets.iter().enumerate() {
        for local in TET_FACES {
            let mut key = [tet[local[0]], tet[local[1]], tet[local[2]]];
            key.sort_unstable();
            adjacency.entry(key).or_default().push(ti);
        }
    }
    // Tag lookup from the surface triangle list.
    let mut tags: BTreeMap<[usize; 3], i32> = BTreeMap::new();
    for (tri, tag) in &mesh.surface_tris {
        let mut key = *tri;
        key.sort_unstable();
        tags.insert(key, *tag);
    }

    let mut faces: Vec<Face<T>> = Vec::with_capacity(adjacency.len());
    let mut face_index: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for (key, adj) in &adjacency {
        if adj.len() > 2 {
            return Err(MeshError::NonManifoldFace { count: adj.len() });
        }
        let tag = tags.remove(key);
        let (class, tag) = if adj.len() == 2 {
            if let Some(t) = tag {
                // A tagged triangle matching an interior face is a modeling
                // error: PEC and radiating surfaces bound the domain.
                return Err(MeshError::DanglingSurfaceElement { face: *key, tag: t });
            }
            (FaceClass::Interior, 0)
        } else {
            let t = tag.ok_or(MeshError::UntaggedBoundaryFace { face: *key })?;
            if radiating_tags.contains(&t) {
                (FaceClass::Radiating, t)
            } else if pec_tags.contains(&t) {
                (FaceClass::Pec, t)
            } else {
                return Err(MeshError::UnclassifiedSurfaceTag { tag: t });
            }
        };
        let v = [
            mesh.vertices[key[0]],
            mesh.vertices[key[1]],
            mesh.vertices[key[2]],
        ];
        let cross = (v[1] - v[0]).cross(v[2] - v[0]);
        let area = cross.norm() * T::lit(0.5);
        let mut normal = cross.normalized();
        let centroid = (v[0] + v[1] + v[2]) / T::lit(3.0);
        // Orient out of the first adjacent tet.
        let t0 = &mesh.tets[adj[0]];
        let opposite = t0
            .iter()
            .copied()
            .find(|vv| !key.contains(vv))
            .expect("tet face must omit one vertex");
        if normal.dot(centroid - mesh.vertices[opposite]) < T::zero() {
            normal = -normal;
        }
        let idx = faces.len();
        face_index.insert(*key, idx);
        faces.push(Face {
            verts: *key,
            class,
            tets: [adj[0], if adj.len() == 2 { adj[1] } else { usize::MAX }],
            tag,
            normal,
            area,
            centroid,
        });
    }
    if let Some((&face, &tag)) = tags.iter().next() {
        return Err(MeshError::DanglingSurfaceElement { face, tag });
    }

    // Per-tet face indices.
    let mut tet_faces = vec![[usize::MAX; 4]; mesh.n_tets()];
    for (ti, tet) in mesh.tets.iter().enumerate() {
        for (fi, local) in TET_FACES.iter().enumerate() {
            let mut key = [tet[local[0]], tet[local[1]], tet[local[2]]];
            key.sort_unstable();
            tet_faces[ti][fi] = face_index[&key];
        }
    }

    // Hybrid numbering: interior, then PEC, then radiating.
    let mut hdof_base = vec![usize::MAX; faces.len()];
    let mut next = 0usize;
    for class in [FaceClass::Interior, FaceClass::Pec, FaceClass::Radiating] {
        for (fi, f) in faces.iter().enumerate() {
            if f.class == class {
                hdof_base[fi] = next;
                next += 3;
            }
        }
    }
    let n_interior = faces.iter().filter(|f| f.class == FaceClass::Interior).count();
    let n_pec = faces.iter().filter(|f| f.class == FaceClass::Pec).count();
    let n_radiating = faces.iter().filter(|f| f.class == FaceClass::Radiating).count();
    let lambda_gamma_base = 3 * (n_interior + n_pec);

    // Radiating edge pairs.
    let mut edge_faces: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        if f.class != FaceClass::Radiating {
            continue;
        }
        let [a, b, c] = f.verts;
        for e in [[a, b], [a, c], [b, c]] {
            edge_faces.entry(e).or_default().push(fi);
        }
    }
    let mut rwg = Vec::new();
    let mut open_radiating_edges = 0usize;
    for (edge, fs) in &edge_faces {
        match fs.len() {
            1 => open_radiating_edges += 1,
            2 => {
                let len = mesh.vertices[edge[0]].dist(mesh.vertices[edge[1]]);
                rwg.push(RwgPair {
                    edge: *edge,
                    plus: fs[0],
                    minus: fs[1],
                    len,
                });
            }
            n => return Err(MeshError::OpenRadiatingSurface { count: n }),
        }
    }

    let counts = DofCounts {
        n_tet: mesh.n_tets(),
        n_face: faces.len(),
        n_interior,
        n_radiating,
        n_pec,
        n_rwg: rwg.len(),
        n_hdg: 3 * faces.len(),
        n_bi: 2 * rwg.len(),
        n_dg: 12 * mesh.n_tets(),
    };

    Ok(Skeleton {
        faces,
        tet_faces,
        hdof_base,
        rwg,
        open_radiating_edges,
        counts,
        lambda_gamma_base,
    })
}

/// Degree-of-freedom counts of a skeleton.
pub fn count_dofs<T: Real>(skeleton: &Skeleton<T>) -> DofCounts {
    skeleton.counts()
}

/// Material constants of one region.
#[derive(Clone, Copy, Debug)]
pub struct Material<T> {
    pub eps_r: Cplx<T>,
    pub mu_r: Cplx<T>,
}

impl<T: Real> Material<T> {
    pub fn vacuum() -> Self {
        Self {
            eps_r: Cplx::new(T::one(), T::zero()),
            mu_r: Cplx::new(T::one(), T::zero()),
        }
    }

    pub fn dielectric(eps_re: f64, eps_im: f64) -> Self {
        Self {
            eps_r: Cplx::new(T::lit(eps_re), T::lit(eps_im)),
            mu_r: Cplx::new(T::one(), T::zero()),
        }
    }

    /// Passive under the `exp(+j omega t)` convention: Im <= 0.
    pub fn is_passive(&self) -> bool {
        self.eps_r.im <= T::zero() && self.mu_r.im <= T::zero()
    }
}

/// Region tag -> material table.
#[derive(Clone, Debug, Default)]
pub struct MaterialMap<T> {
    map: BTreeMap<i32, Material<T>>,
}

impl<T: Real> MaterialMap<T> {
    pub fn new() -> Self {
        Self { map: BTreeMap::new() }
    }

    pub fn insert(&mut self, tag: i32, m: Material<T>) {
        self.map.insert(tag, m);
    }

    pub fn get(&self, tag: i32) -> Result<Material<T>, MeshError> {
        self.map
            .get(&tag)
            .copied()
            .ok_or(MeshError::MissingMaterial { tag })
    }

    /// Single material applied to every region.
    pub fn uniform(m: Material<T>) -> Self {
        let mut map = Self::new();
        map.insert_default(m);
        map
    }

    fn insert_default(&mut self, m: Material<T>) {
        self.map.insert(i32::MIN, m);
    }

    /// Lookup with fallback to the uniform default, if one was set.
    pub fn lookup(&self, tag: i32) -> Result<Material<T>, MeshError> {
        if let Some(m) = self.map.get(&tag) {
            return Ok(*m);
        }
        self.map
            .get(&i32::MIN)
            .copied()
            .ok_or(MeshError::MissingMaterial { tag })
    }

    pub fn all_passive(&self) -> bool {
        self.map.values().all(|m| m.is_passive())
    }
}
