//! Built-in tetrahedral mesh generators for canonical scattering geometries.
//!
//! All generators emit meshes that pass skeleton validation: positively
//! oriented tetrahedra, conforming faces, and fully tagged boundaries.
//! Spheres are geodesic subdivisions of the icosahedron; shells and balls
//! extrude them radially, splitting each prism into three tetrahedra with a
//! vertex-id rule that keeps neighboring prisms conforming; boxes use the
//! six-tetrahedra path split of each grid cell, which is conforming across
//! uniform grids.

use crate::mesh::{Mesh, TAG_PEC, TAG_RADIATING, TET_FACES};
use crate::scalar::Real;
use crate::vec3::Vec3;
use std::collections::BTreeMap;

/// Reference unit tetrahedron with a fully radiating boundary.
pub fn unit_tet<T: Real>() -> Mesh<T> {
    let vertices = vec![
        Vec3::from_f64(0.0, 0.0, 0.0),
        Vec3::from_f64(1.0, 0.0, 0.0),
        Vec3::from_f64(0.0, 1.0, 0.0),
        Vec3::from_f64(0.0, 0.0, 1.0),
    ];
    let tets = vec![[0, 1, 2, 3]];
    let surface_tris = all_radiating(&tets);
    Mesh::from_raw(vertices, tets, vec![1], surface_tris).expect("unit tet is valid")
}

/// Two tetrahedra sharing one face, fully radiating boundary.
pub fn two_tet<T: Real>() -> Mesh<T> {
    let vertices = vec![
        Vec3::from_f64(0.0, 0.0, 0.0),
        Vec3::from_f64(1.0, 0.0, 0.0),
        Vec3::from_f64(0.0, 1.0, 0.0),
        Vec3::from_f64(0.0, 0.0, 1.0),
        Vec3::from_f64(1.0, 1.0, 1.0),
    ];
    let tets = vec![[0, 1, 2, 3], [1, 2, 3, 4]];
    let surface_tris = all_radiating(&tets);
    Mesh::from_raw(vertices, tets, vec![1, 1], surface_tris).expect("two tets are valid")
}

/// Fan of `n` tetrahedra around the axis edge of a bipyramid over a regular
/// `n`-gon. Useful to hit an arbitrary exact tetrahedron count; element
/// quality degrades as `n` grows.
pub fn tet_fan<T: Real>(n: usize) -> Mesh<T> {
    assert!(n >= 3, "fan needs at least 3 tetrahedra");
    let mut vertices = vec![Vec3::from_f64(0.0, 0.0, 0.5), Vec3::from_f64(0.0, 0.0, -0.5)];
    for k in 0..n {
        let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
        vertices.push(Vec3::from_f64(0.5 * th.cos(), 0.5 * th.sin(), 0.0));
    }
    let mut tets = Vec::with_capacity(n);
    for k in 0..n {
        tets.push([0, 1, 2 + k, 2 + (k + 1) % n]);
    }
    let surface_tris = all_radiating(&tets);
    Mesh::from_raw(vertices, tets, vec![1; n], surface_tris).expect("fan is valid")
}

/// Axis-aligned box of `nx * ny * nz` grid cells and outer dimensions
/// `lx * ly * lz`, centered at the origin, each cell split into six
/// tetrahedra. Boundary is fully radiating.
pub fn kuhn_box<T: Real>(nx: usize, ny: usize, nz: usize, lx: f64, ly: f64, lz: f64) -> Mesh<T> {
    assert!(nx >= 1 && ny >= 1 && nz >= 1, "box needs at least one cell per axis");
    assert!(lx > 0.0 && ly > 0.0 && lz > 0.0, "box dimensions must be positive");
    let vid = |ix: usize, iy: usize, iz: usize| (iz * (ny + 1) + iy) * (nx + 1) + ix;
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
    for iz in 0..=nz {
        for iy in 0..=ny {
            for ix in 0..=nx {
                vertices.push(Vec3::from_f64(
                    lx * (ix as f64 / nx as f64 - 0.5),
                    ly * (iy as f64 / ny as f64 - 0.5),
                    lz * (iz as f64 / nz as f64 - 0.5),
                ));
            }
        }
    }
    // Path tetrahedra: walk the cell diagonal one axis at a time; the six
    // axis orders tile the cell and match across neighbors.
    const AXIS_ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut tets = Vec::with_capacity(6 * nx * ny * nz);
    for iz in 0..nz {
        for iy in 0..ny {
            for ix in 0..nx {
                for order in AXIS_ORDERS {
                    let mut c = [ix, iy, iz];
                    let mut tet = [vid(c[0], c[1], c[2]); 4];
                    for (s, &axis) in order.iter().enumerate() {
                        c[axis] += 1;
                        tet[s + 1] = vid(c[0], c[1], c[2]);
                    }
                    tets.push(tet);
                }
            }
        }
    }
    let region_tags = vec![1; tets.len()];
    let surface_tris = all_radiating(&tets);
    Mesh::from_raw(vertices, tets, region_tags, surface_tris).expect("box is valid")
}

/// Triangulated unit sphere: geodesic subdivision of the icosahedron with
/// frequency `nu` (each icosahedral face becomes `nu^2` triangles). Returns
/// `10 nu^2 + 2` points on the unit sphere and `20 nu^2` outward-oriented
/// triangles.
pub fn geodesic_sphere_surface<T: Real>(nu: usize) -> (Vec<Vec3<T>>, Vec<[usize; 3]>) {
    assert!(nu >= 1, "subdivision frequency must be at least 1");
    let (ico_v, ico_f) = icosahedron::<T>();
    let mut pts: Vec<Vec3<T>> = Vec::new();
    let mut ids: BTreeMap<LatticeKey, usize> = BTreeMap::new();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for (fid, face) in ico_f.iter().enumerate() {
        let [c0, c1, c2] = *face;
        let mut idx = vec![vec![usize::MAX; nu + 1]; nu + 1];
        for i in 0..=nu {
            for j in 0..=(nu - i) {
                let k = nu - i - j;
                let key = lattice_key(fid, [c0, c1, c2], i, j, k, nu);
                let id = *ids.entry(key).or_insert_with(|| {
                    let p = ico_v[c0] * T::lit(k as f64)
                        + ico_v[c1] * T::lit(i as f64)
                        + ico_v[c2] * T::lit(j as f64);
                    pts.push(p.normalized());
                    pts.len() - 1
                });
                idx[i][j] = id;
            }
        }
        for i in 0..nu {
            for j in 0..(nu - i) {
                tris.push([idx[i][j], idx[i + 1][j], idx[i][j + 1]]);
                if i + j + 2 <= nu {
                    tris.push([idx[i + 1][j], idx[i + 1][j + 1], idx[i][j + 1]]);
                }
            }
        }
    }
    debug_assert_eq!(pts.len(), 10 * nu * nu + 2);
    debug_assert_eq!(tris.len(), 20 * nu * nu);
    (pts, tris)
}

/// Spherical shell `a <= r <= b` extruded in `layers` radial steps from a
/// geodesic sphere of frequency `nu`. Inner surface is tagged PEC, outer
/// surface radiating; the single volume region has tag 1.
pub fn geodesic_shell<T: Real>(a: f64, b: f64, nu: usize, layers: usize) -> Mesh<T> {
    assert!(a > 0.0 && b > a, "shell needs 0 < a < b");
    assert!(layers >= 1, "shell needs at least one layer");
    let (upts, utris) = geodesic_sphere_surface::<T>(nu);
    let np = upts.len();
    let mut vertices = Vec::with_capacity(np * (layers + 1));
    for l in 0..=layers {
        let r = a + (b - a) * (l as f64) / (layers as f64);
        for p in &upts {
            vertices.push(*p * T::lit(r));
        }
    }
    let mut tets = Vec::with_capacity(3 * utris.len() * layers);
    for l in 0..layers {
        let lo = l * np;
        let hi = (l + 1) * np;
        for tri in &utris {
            split_prism(
                [lo + tri[0], lo + tri[1], lo + tri[2]],
                [hi + tri[0], hi + tri[1], hi + tri[2]],
                &mut tets,
            );
        }
    }
    let region_tags = vec![1; tets.len()];
    let mut surface_tris = Vec::new();
    for f in boundary_faces(&tets) {
        if f.iter().all(|&v| v < np) {
            surface_tris.push((f, TAG_PEC));
        } else {
            assert!(
                f.iter().all(|&v| v >= layers * np),
                "shell boundary face must lie on the inner or outer surface"
            );
            surface_tris.push((f, TAG_RADIATING));
        }
    }
    Mesh::from_raw(vertices, tets, region_tags, surface_tris).expect("shell is valid")
}

/// Solid ball of radius `r` built from a geodesic sphere of frequency `nu`:
/// a central tetrahedron fan plus `layer_tags.len() - 1` extruded shells.
/// Layer `l` (innermost first) gets region tag `layer_tags[l]`; the boundary
/// is fully radiating.
pub fn geodesic_ball<T: Real>(r: f64, nu: usize, layer_tags: &[i32]) -> Mesh<T> {
    assert!(r > 0.0, "ball radius must be positive");
    assert!(!layer_tags.is_empty(), "ball needs at least one layer");
    let layers = layer_tags.len();
    let (upts, utris) = geodesic_sphere_surface::<T>(nu);
    let np = upts.len();
    let mut vertices = vec![Vec3::zero()];
    for l in 1..=layers {
        let rl = r * (l as f64) / (layers as f64);
        for p in &upts {
            vertices.push(*p * T::lit(rl));
        }
    }
    // Vertex id of sphere point i at radial level l (levels are 1-based;
    // level 0 is the single center vertex).
    let at = |l: usize, i: usize| 1 + (l - 1) * np + i;
    let mut tets = Vec::new();
    let mut region_tags = Vec::new();
    for tri in &utris {
        tets.push([0, at(1, tri[0]), at(1, tri[1]), at(1, tri[2])]);
        region_tags.push(layer_tags[0]);
    }
    for l in 1..layers {
        for tri in &utris {
            split_prism(
                [at(l, tri[0]), at(l, tri[1]), at(l, tri[2])],
                [at(l + 1, tri[0]), at(l + 1, tri[1]), at(l + 1, tri[2])],
                &mut tets,
            );
        }
        region_tags.resize(tets.len(), layer_tags[l]);
    }
    let surface_tris = all_radiating(&tets);
    Mesh::from_raw(vertices, tets, region_tags, surface_tris).expect("ball is valid")
}

/// Split the prism `b0 b1 b2 / t0 t1 t2` (with `t[i]` radially above `b[i]`)
/// into three tetrahedra. Every quadrilateral side is cut by the diagonal
/// through its smallest vertex id, so the two prisms sharing a side always
/// agree on the cut.
fn split_prism(b: [usize; 3], t: [usize; 3], out: &mut Vec<[usize; 4]>) {
    let (mut b, mut t) = (b, t);
    let vals = [b[0], b[1], b[2], t[0], t[1], t[2]];
    let mp = (0..6).min_by_key(|&p| vals[p]).unwrap();
    if mp >= 3 {
        std::mem::swap(&mut b, &mut t);
    }
    let r = mp % 3;
    let rot = |a: [usize; 3]| [a[r], a[(r + 1) % 3], a[(r + 2) % 3]];
    let (b, t) = (rot(b), rot(t));
    // b[0] is now the smallest id, so the quads touching it are cut by
    // (b0,t1) and (b0,t2); the third quad follows its own minimum.
    let qmin = b[1].min(b[2]).min(t[1]).min(t[2]);
    if qmin == b[1] || qmin == t[2] {
        out.push([b[0], b[1], b[2], t[2]]);
        out.push([b[0], b[1], t[2], t[1]]);
    } else {
        out.push([b[0], b[1], b[2], t[1]]);
        out.push([b[0], b[2], t[2], t[1]]);
    }
    out.push([b[0], t[0], t[1], t[2]]);
}

/// Faces that belong to exactly one tetrahedron, as sorted vertex triples.
fn boundary_faces(tets: &[[usize; 4]]) -> Vec<[usize; 3]> {
    let mut count: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for tet in tets {
        for f in TET_FACES {
            let mut key = [tet[f[0]], tet[f[1]], tet[f[2]]];
            key.sort_unstable();
            *count.entry(key).or_insert(0) += 1;
        }
    }
    count
        .into_iter()
        .filter(|&(_, c)| c == 1)
        .map(|(k, _)| k)
        .collect()
}

fn all_radiating(tets: &[[usize; 4]]) -> Vec<([usize; 3], i32)> {
    boundary_faces(tets)
        .into_iter()
        .map(|f| (f, TAG_RADIATING))
        .collect()
}

/// Icosahedron on the unit sphere; faces oriented outward. Edges and faces
/// are recovered from the vertex set by adjacency at the minimal distance.
fn icosahedron<T: Real>() -> (Vec<Vec3<T>>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut raw: Vec<[f64; 3]> = Vec::with_capacity(12);
    for &s1 in &[-1.0, 1.0] {
        for &s2 in &[-1.0, 1.0] {
            raw.push([0.0, s1, s2 * phi]);
            raw.push([s1, s2 * phi, 0.0]);
            raw.push([s2 * phi, 0.0, s1]);
        }
    }
    // Edge pairs sit at squared distance 4; the next shell is ~10.5.
    let d2 = |a: &[f64; 3], b: &[f64; 3]| {
        (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
    };
    let mut adj = [[false; 12]; 12];
    for i in 0..12 {
        for j in (i + 1)..12 {
            if d2(&raw[i], &raw[j]) < 6.0 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let mut faces = Vec::with_capacity(20);
    for i in 0..12 {
        for j in (i + 1)..12 {
            if !adj[i][j] {
                continue;
            }
            for k in (j + 1)..12 {
                if adj[i][k] && adj[j][k] {
                    faces.push([i, j, k]);
                }
            }
        }
    }
    debug_assert_eq!(faces.len(), 20);
    let verts: Vec<Vec3<T>> = raw
        .iter()
        .map(|p| Vec3::from_f64(p[0], p[1], p[2]).normalized())
        .collect();
    for f in &mut faces {
        let n = (verts[f[1]] - verts[f[0]]).cross(verts[f[2]] - verts[f[0]]);
        let c = verts[f[0]] + verts[f[1]] + verts[f[2]];
        if n.dot(c) < T::zero() {
            f.swap(1, 2);
        }
    }
    (verts, faces)
}

/// Dedup key of a subdivision lattice point: icosahedral corners and edge
/// points are shared between faces, so they are keyed by the coarse
/// topology, never by floating-point coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum LatticeKey {
    Corner(usize),
    Edge { a: usize, b: usize, step: usize },
    Interior { face: usize, i: usize, j: usize },
}

fn lattice_key(
    face: usize,
    c: [usize; 3],
    i: usize,
    j: usize,
    k: usize,
    nu: usize,
) -> LatticeKey {
    if i == nu {
        return LatticeKey::Corner(c[1]);
    }
    if j == nu {
        return LatticeKey::Corner(c[2]);
    }
    if k == nu {
        return LatticeKey::Corner(c[0]);
    }
    if k == 0 {
        return edge_key(c[1], c[2], j, nu);
    }
    if j == 0 {
        return edge_key(c[0], c[1], i, nu);
    }
    if i == 0 {
        return edge_key(c[0], c[2], j, nu);
    }
    LatticeKey::Interior { face, i, j }
}

/// Edge point `step` of `nu` along the icosahedral edge from `from` to `to`,
/// keyed from the smaller corner id.
fn edge_key(from: usize, to: usize, step: usize, nu: usize) -> LatticeKey {
    if from < to {
        LatticeKey::Edge { a: from, b: to, step }
    } else {
        LatticeKey::Edge { a: to, b: from, step: nu - step }
    }
}
