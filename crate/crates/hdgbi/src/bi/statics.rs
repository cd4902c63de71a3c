//! Closed-form static potential integrals over a flat triangle.
//!
//! For an observation point r and a source triangle T these are
//!   I0    = int_T 1/R dS',
//!   Irho  = int_T (rho' - P)/R dS'   (in-plane moment about the projection P),
//!   Igrad = int_T grad_r (1/R) dS'   (principal value when r lies in the plane),
//!   Ir    = int_T R dS',
//!   IrhoR = int_T (rho' - P) R dS',
//! with R = |r - r'|. They anchor the singularity-extracted near integration
//! of the Green-function moments: both the 1/R pole and the |R| kink of the
//! kernel are removed in closed form, and the remaining C^2 difference is
//! handled by ordinary Gauss rules. The R moments follow from the surface
//! divergence theorem: div_s[(rho'-P) R] = 3R - d^2/R gives Ir, and
//! grad_s(R^3) = 3 (rho'-P) R gives IrhoR as edge integrals of R^3.
//!
//! Per edge i of the triangle (counterclockwise order, outward in-plane normal
//! m_i = e_i x n), with s the signed in-plane distance from P to the edge line,
//! l1/l2 the endpoint projections along the edge, R1/R2 the endpoint distances
//! and f2 = ln((R2+l2)/(R1+l1)) the edge integral of 1/R:
//!   I0    = sum_i { s_i f2_i + |d| beta_i },
//!   Irho  = sum_i m_i (l2 R2 - l1 R1 + R0^2 f2_i) / 2,
//!   Igrad = -(d I3) n - sum_i m_i f2_i,
//! where d = (r - v0).n, d I3 = int_T d/R^3 dS' = -sign(d) sum_i beta_i and the
//! beta_i are arctangent differences that sum to the (signed) solid-angle part.

use crate::scalar::Real;
use crate::vec3::Vec3;

/// Static integrals of one triangle seen from one observation point, plus the
/// frame quantities (unit normal, projection, signed height) they refer to.
#[derive(Clone, Copy, Debug)]
pub struct TriStatics<T> {
    /// int 1/R dS'.
    pub i0: T,
    /// int (rho' - P)/R dS', an in-plane vector; int r'/R = irho + proj * i0.
    pub irho: Vec3<T>,
    /// int grad_r(1/R) dS'; principal value (normal part zero) in the plane.
    pub igrad: Vec3<T>,
    /// int R dS'.
    pub ir1: T,
    /// int (rho' - P) R dS', an in-plane vector; int r' R = irho_r + proj * ir1.
    pub irho_r: Vec3<T>,
    /// Right-handed unit normal of the triangle.
    pub normal: Vec3<T>,
    /// Projection of the observation point onto the triangle plane.
    pub proj: Vec3<T>,
    /// Signed height of the observation point above the plane.
    pub height: T,
}

/// Evaluate the static triangle integrals at observation point `r`.
///
/// Valid for any `r` not on the triangle boundary; on the triangle plane the
/// normal part of `igrad` is the (vanishing) principal value.
pub fn tri_statics<T: Real>(v: &[Vec3<T>; 3], r: Vec3<T>) -> TriStatics<T> {
    let cross = (v[1] - v[0]).cross(v[2] - v[0]);
    let normal = cross.normalized();
    let d = (r - v[0]).dot(normal);
    let proj = r - normal * d;
    let lmax = v[0]
        .dist(v[1])
        .max(v[1].dist(v[2]))
        .max(v[2].dist(v[0]));
    let tol = T::lit(1e-9) * lmax;

    let mut i0 = T::zero();
    let mut irho = Vec3::zero();
    let mut igrad_plane = Vec3::zero();
    let mut irho_r = Vec3::zero();
    let mut s_edge_r = T::zero();
    let mut beta_sum = T::zero();
    for i in 0..3 {
        let a = v[i];
        let b = v[(i + 1) % 3];
        let e = (b - a).normalized();
        let m = e.cross(normal);
        let s = (a - proj).dot(m);
        let l1 = (a - proj).dot(e);
        let l2 = (b - proj).dot(e);
        let r1 = a.dist(r);
        let r2 = b.dist(r);
        let r0sq = s * s + d * d;

        // Edge integrals of R and R^3; their f2 terms join below.
        let lr = l2 * r2 - l1 * r1;
        let mut edge_r = lr * T::lit(0.5);
        let mut edge_r3 = (l2 * r2 * r2 * r2 - l1 * r1 * r1 * r1) * T::lit(0.25)
            + r0sq * lr * T::lit(0.375);
        let f2 = if r0sq > tol * tol {
            // Stable branch of ln((R2+l2)/(R1+l1)); the forms agree exactly
            // because (R-l)(R+l) = R0^2 on the edge line.
            Some(if l1 + l2 > T::zero() {
                ((r2 + l2) / (r1 + l1)).ln()
            } else {
                ((r1 - l1) / (r2 - l2)).ln()
            })
        } else if l1 * l2 > T::zero() {
            // On the edge line but outside the segment (structured meshes hit
            // this exactly): R = |l|, and the edge integral of 1/R is finite.
            Some(if l1 > T::zero() {
                (l2 / l1).ln()
            } else {
                (l1 / l2).ln()
            })
        } else {
            // On the open segment itself: the divergent pieces cancel in I0
            // and the gradient is a principal value; drop the edge term.
            None
        };
        if let Some(f2) = f2 {
            i0 = i0 + s * f2;
            edge_r = edge_r + r0sq * f2 * T::lit(0.5);
            edge_r3 = edge_r3 + r0sq * r0sq * f2 * T::lit(0.375);
            igrad_plane = igrad_plane - m * f2;
        }
        irho = irho + m * edge_r;
        irho_r = irho_r + m * (edge_r3 / T::lit(3.0));
        s_edge_r = s_edge_r + s * edge_r;

        // beta_i -> 0 as s -> 0 and only enters scaled by |d| or sign(d),
        // so both small-parameter branches drop it.
        if d.abs() >= tol && s.abs() >= tol {
            let beta = (d.abs() * l2 / (s * r2)).atan() - (l2 / s).atan()
                - (d.abs() * l1 / (s * r1)).atan()
                + (l1 / s).atan();
            beta_sum = beta_sum + beta;
        }
    }

    let d_i3 = if d.abs() < tol {
        T::zero()
    } else {
        i0 = i0 + d.abs() * beta_sum;
        -d.signum() * beta_sum
    };
    TriStatics {
        i0,
        irho,
        igrad: igrad_plane - normal * d_i3,
        ir1: (s_edge_r + d * d * i0) / T::lit(3.0),
        irho_r,
        normal,
        proj,
        height: d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::tri_rule;

    // Numerical oracle: adaptive 4-way triangle subdivision with a degree-4
    // rule per cell, integrating [1/R, r'/R, grad_r(1/R), R, r' R] packed as
    // 11 floats.
    fn cell(v: &[Vec3<f64>; 3], r: Vec3<f64>) -> [f64; 11] {
        let rule = tri_rule::<f64>(4).unwrap();
        let two_a = (v[1] - v[0]).cross(v[2] - v[0]).norm();
        let mut acc = [0.0; 11];
        for q in &rule.points {
            let rp = v[0] * q.bary[0] + v[1] * q.bary[1] + v[2] * q.bary[2];
            let w = q.weight * two_a;
            let dr = r - rp;
            let dist = dr.norm();
            acc[0] += w / dist;
            let m = rp * (w / dist);
            acc[1] += m.x;
            acc[2] += m.y;
            acc[3] += m.z;
            let g = dr * (-w / (dist * dist * dist));
            acc[4] += g.x;
            acc[5] += g.y;
            acc[6] += g.z;
            acc[7] += w * dist;
            let mr = rp * (w * dist);
            acc[8] += mr.x;
            acc[9] += mr.y;
            acc[10] += mr.z;
        }
        acc
    }

    fn adaptive(v: &[Vec3<f64>; 3], r: Vec3<f64>, depth: usize, tol: f64) -> [f64; 11] {
        let coarse = cell(v, r);
        let m01 = (v[0] + v[1]) * 0.5;
        let m12 = (v[1] + v[2]) * 0.5;
        let m02 = (v[0] + v[2]) * 0.5;
        let kids = [
            [v[0], m01, m02],
            [m01, v[1], m12],
            [m02, m12, v[2]],
            [m01, m12, m02],
        ];
        let mut fine = [0.0; 11];
        for k in &kids {
            let part = cell(k, r);
            for i in 0..11 {
                fine[i] += part[i];
            }
        }
        let err: f64 = (0..11).map(|i| (fine[i] - coarse[i]).abs()).fold(0.0, f64::max);
        if depth >= 11 || err < tol {
            return fine;
        }
        let mut out = [0.0; 11];
        for k in &kids {
            let part = adaptive(k, r, depth + 1, tol * 0.5);
            for i in 0..11 {
                out[i] += part[i];
            }
        }
        out
    }

    fn check_against_oracle(v: &[Vec3<f64>; 3], r: Vec3<f64>, tol: f64) {
        let st = tri_statics(v, r);
        let oracle = adaptive(v, r, 0, 1e-12);
        let scale = oracle[0].abs().max(1.0);
        assert!(
            (st.i0 - oracle[0]).abs() < tol * scale,
            "i0 {} vs oracle {}",
            st.i0,
            oracle[0]
        );
        let ir = st.irho + st.proj * st.i0;
        for (got, want) in [ir.x, ir.y, ir.z].iter().zip(&oracle[1..4]) {
            assert!((got - want).abs() < tol * scale, "irho {got} vs {want}");
        }
        for (got, want) in [st.igrad.x, st.igrad.y, st.igrad.z].iter().zip(&oracle[4..7]) {
            assert!((got - want).abs() < tol * scale.max(want.abs()), "igrad {got} vs {want}");
        }
        let rscale = oracle[7].abs().max(1.0);
        assert!(
            (st.ir1 - oracle[7]).abs() < tol * rscale,
            "ir1 {} vs oracle {}",
            st.ir1,
            oracle[7]
        );
        let irr = st.irho_r + st.proj * st.ir1;
        for (got, want) in [irr.x, irr.y, irr.z].iter().zip(&oracle[8..11]) {
            assert!((got - want).abs() < tol * rscale, "irho_r {got} vs {want}");
        }
    }

    fn sample_tris() -> Vec<[Vec3<f64>; 3]> {
        vec![
            [
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.1, 0.0),
                Vec3::new(0.2, 0.9, 0.0),
            ],
            [
                Vec3::new(0.3, -0.2, 0.5),
                Vec3::new(1.1, 0.4, 0.7),
                Vec3::new(0.5, 0.8, -0.1),
            ],
            [
                Vec3::new(-1.0, 2.0, 0.3),
                Vec3::new(-0.2, 2.1, 0.25),
                Vec3::new(-0.7, 2.9, 0.9),
            ],
        ]
    }

    #[test]
    fn matches_adaptive_quadrature_off_plane() {
        for v in sample_tris() {
            let c = (v[0] + v[1] + v[2]) / 3.0;
            let n = (v[1] - v[0]).cross(v[2] - v[0]).normalized();
            let diam = v[0].dist(v[1]).max(v[1].dist(v[2])).max(v[2].dist(v[0]));
            // Straight above the centroid and obliquely off to one side.
            for r in [
                c + n * (0.6 * diam),
                c - n * (0.31 * diam) + (v[1] - v[0]) * 0.4,
                c + n * (3.0 * diam) + (v[2] - v[0]) * 1.7,
            ] {
                check_against_oracle(&v, r, 1e-9);
            }
        }
    }

    #[test]
    fn matches_adaptive_quadrature_near_plane() {
        for v in sample_tris() {
            let c = (v[0] + v[1] + v[2]) / 3.0;
            let n = (v[1] - v[0]).cross(v[2] - v[0]).normalized();
            let diam = v[0].dist(v[1]).max(v[1].dist(v[2])).max(v[2].dist(v[0]));
            let r = c + n * (0.02 * diam) + (v[1] - v[2]) * 0.11;
            check_against_oracle(&v, r, 2e-7);
        }
    }

    #[test]
    fn matches_adaptive_quadrature_coplanar_outside() {
        for v in sample_tris() {
            let c = (v[0] + v[1] + v[2]) / 3.0;
            // In the plane but outside the triangle: integrable, and the
            // normal part of igrad is exactly zero.
            let r = c + (v[1] - v[0]) * 1.9 + (v[2] - v[0]) * 0.6;
            let st = tri_statics(&v, r);
            assert!(st.igrad.dot(st.normal).abs() < 1e-10);
            assert!(st.height.abs() < 1e-12 * c.dist(r));
            check_against_oracle(&v, r, 1e-7);
        }
    }

    #[test]
    fn matches_adaptive_quadrature_on_an_edge_line() {
        // Structured meshes put observation points exactly on the extended
        // line of a nearby edge (coplanar, outside the segment). The edge
        // integral of 1/R stays finite there and must not be dropped.
        let v: [Vec3<f64>; 3] = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.3, 0.8, 0.0),
        ];
        for r in [Vec3::new(1.7, 0.0, 0.0), Vec3::new(-0.9, 0.0, 0.0)] {
            let st = tri_statics(&v, r);
            assert!(st.igrad.dot(st.normal).abs() < 1e-10);
            check_against_oracle(&v, r, 1e-7);
        }
    }

    #[test]
    fn principal_value_inside_the_triangle() {
        for v in sample_tris() {
            let r = v[0] * 0.3 + v[1] * 0.45 + v[2] * 0.25;
            let st = tri_statics(&v, r);
            // Normal part of the gradient is a principal value: zero.
            assert!(st.igrad.dot(st.normal).abs() < 1e-12);
            assert!(st.i0.is_finite() && st.i0 > 0.0);
            // i0 from inside must exceed the same integral from the mirror
            // point lifted off the plane (monotone in distance).
            let lifted = tri_statics(&v, r + st.normal * 0.3);
            assert!(st.i0 > lifted.i0);
        }
    }

    #[test]
    fn rigid_motion_invariance() {
        // Rodrigues rotation about a skew axis plus a translation.
        let axis = Vec3::new(1.0, 2.0, 3.0).normalized();
        let ang: f64 = 0.7;
        let rot = |p: Vec3<f64>| -> Vec3<f64> {
            p * ang.cos() + axis.cross(p) * ang.sin() + axis * (axis.dot(p) * (1.0 - ang.cos()))
        };
        let shift = Vec3::new(-0.4, 0.25, 1.3);
        for v in sample_tris() {
            let c = (v[0] + v[1] + v[2]) / 3.0;
            let n = (v[1] - v[0]).cross(v[2] - v[0]).normalized();
            let r = c + n * 0.2 + (v[1] - v[0]) * 0.15;
            let st = tri_statics(&v, r);
            let vm = [rot(v[0]) + shift, rot(v[1]) + shift, rot(v[2]) + shift];
            let stm = tri_statics(&vm, rot(r) + shift);
            assert!((st.i0 - stm.i0).abs() < 1e-12 * st.i0.abs());
            assert!((rot(st.irho) - stm.irho).norm() < 1e-12);
            assert!((rot(st.igrad) - stm.igrad).norm() < 1e-12);
            assert!((st.ir1 - stm.ir1).abs() < 1e-12 * st.ir1.abs());
            assert!((rot(st.irho_r) - stm.irho_r).norm() < 1e-12);
            assert!((st.height - stm.height).abs() < 1e-12);
        }
    }
}
