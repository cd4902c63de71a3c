//! Global assembly of the condensed trace system and field recovery.
//!
//! Element contributions are computed in parallel but merged in element
//! order into a deterministic accumulator, so the assembled matrix is
//! byte-identical for any thread count.

use super::element::{element_faces, element_operators, ElementOperators};
use crate::basis::TetBasis;
use crate::dense::DMat;
use crate::error::AssemblyError;
use crate::mesh::{FaceClass, MaterialMap, Mesh, Skeleton};
use crate::quadrature::{tet_rule, tri_rule};
use crate::scalar::{Cplx, Real};
use crate::sparse::{Accumulator, CscMatrix};
use rayon::prelude::*;

/// Quadrature degree for volume and face element integrals.
const QUAD_DEGREE: usize = 4;

/// Condensed HDG system: the trace-space Schur complement and per-element
/// recovery operators.
pub struct HdgSystem<T> {
    pub k0: T,
    /// Schur complement Q = L - sum_i B_i A_i^{-1} F_i (complex symmetric).
    pub q: CscMatrix<T>,
    /// Per element: X_i = A_i^{-1} F_i and the element's trace unknowns;
    /// volume fields are [E; H] = -X_i Lambda_i.
    elems: Vec<(DMat<T>, [usize; 12])>,
    pub n_hdg: usize,
}

impl<T: Real> HdgSystem<T> {
    /// Volume field coefficients of every element for a given trace vector:
    /// per tetrahedron, 6 electric then 6 magnetic edge coefficients.
    pub fn recover_fields(&self, lambda: &[Cplx<T>]) -> Vec<[Cplx<T>; 12]> {
        assert_eq!(lambda.len(), self.n_hdg);
        self.elems
            .par_iter()
            .map(|(x, dofs)| {
                let local: Vec<Cplx<T>> = dofs.iter().map(|&d| lambda[d]).collect();
                let prod = x.matvec(&local);
                std::array::from_fn(|i| -prod[i])
            })
            .collect()
    }

    /// Recovery operator X_i = A_i^{-1} F_i of element `i` with its trace
    /// numbering; exposed for consistency tests.
    pub fn element_solve(&self, i: usize) -> (&DMat<T>, &[usize; 12]) {
        (&self.elems[i].0, &self.elems[i].1)
    }

    pub fn n_elems(&self) -> usize {
        self.elems.len()
    }
}

/// Assemble the condensed trace system for a mesh at wavenumber `k0`.
pub fn assemble<T: Real>(
    mesh: &Mesh<T>,
    sk: &Skeleton<T>,
    materials: &MaterialMap<T>,
    k0: T,
) -> Result<HdgSystem<T>, AssemblyError> {
    if !(k0 > T::zero()) {
        return Err(AssemblyError::NonPositiveFrequency {
            f: k0.to_f64().unwrap_or(f64::NAN),
        });
    }
    let vol_rule = tet_rule::<T>(QUAD_DEGREE)?;
    let face_rule = tri_rule::<T>(QUAD_DEGREE)?;
    let n_hdg = sk.n_hdg();

    // Per-element Schur contributions, in parallel.
    let per_tet: Vec<Result<(ElementSchur<T>, DMat<T>, [usize; 12]), AssemblyError>> = (0..mesh
        .n_tets())
        .into_par_iter()
        .map(|ti| {
            let tet = &mesh.tets[ti];
            let tb = TetBasis::new(
                [
                    mesh.vertices[tet[0]],
                    mesh.vertices[tet[1]],
                    mesh.vertices[tet[2]],
                    mesh.vertices[tet[3]],
                ],
                *tet,
            );
            let faces = element_faces(mesh, sk, ti);
            let material = materials.lookup(mesh.region_tags[ti])?;
            let ElementOperators { a, f, dofs } =
                element_operators(&tb, &faces, material, k0, &vol_rule, &face_rule)?;
            let a_lu = a
                .lu()
                .map_err(|_| AssemblyError::SingularElement { tet: ti })?;
            let x = a_lu.solve_mat(&f);
            // G = B A^{-1} F with B = F^T diag(I, -I): negate the magnetic
            // rows of X before the product.
            let mut y = x.clone();
            for r in 6..12 {
                for c in 0..12 {
                    let v = y.get(r, c);
                    y.set(r, c, -v);
                }
            }
            let mut g = DMat::zeros(12, 12);
            for p in 0..12 {
                for q in 0..12 {
                    let mut acc = Cplx::new(T::zero(), T::zero());
                    for e in 0..12 {
                        acc += f.get(e, p) * y.get(e, q);
                    }
                    g.set(p, q, acc);
                }
            }
            Ok((ElementSchur { g }, x, dofs))
        })
        .collect();

    // Face mass blocks for L, in parallel; the weight counts one -1 per
    // element side plus one more -1 on radiating faces.
    let face_masses: Vec<[[T; 3]; 3]> = sk
        .faces
        .par_iter()
        .map(|face| {
            let fb = crate::basis::FaceBasis::new([
                mesh.vertices[face.verts[0]],
                mesh.vertices[face.verts[1]],
                mesh.vertices[face.verts[2]],
            ]);
            let two_a = T::lit(2.0) * fb.area;
            let mut m = [[T::zero(); 3]; 3];
            for p in &face_rule.points {
                let eta: [crate::vec3::Vec3<T>; 3] =
                    std::array::from_fn(|t| fb.eval(t, p.bary));
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] += eta[i].dot(eta[j]) * p.weight * two_a;
                    }
                }
            }
            m
        })
        .collect();

    // Deterministic merge: L face blocks in face order, then element Schur
    // blocks in element order.
    let mut acc = Accumulator::new(n_hdg, n_hdg);
    for (fi, face) in sk.faces.iter().enumerate() {
        let sides = if face.is_boundary() { 1.0 } else { 2.0 };
        let extra = if face.class == FaceClass::Radiating {
            1.0
        } else {
            0.0
        };
        let coeff = -T::lit(sides + extra);
        let base = sk.hdof_base[fi];
        for i in 0..3 {
            for j in 0..3 {
                acc.add(
                    base + i,
                    base + j,
                    Cplx::new(coeff * face_masses[fi][i][j], T::zero()),
                );
            }
        }
    }
    let mut elems = Vec::with_capacity(mesh.n_tets());
    for item in per_tet {
        let (schur, x, dofs) = item?;
        for p in 0..12 {
            for q in 0..12 {
                acc.add(dofs[p], dofs[q], -schur.g.get(p, q));
            }
        }
        elems.push((x, dofs));
    }

    Ok(HdgSystem {
        k0,
        q: acc.build(),
        elems,
        n_hdg,
    })
}

struct ElementSchur<T> {
    g: DMat<T>,
}
