//! Combined-field boundary-integral operator blocks on the edge-pair basis.
//!
//! With the single-layer and double-layer operators
//!   L{X}(r) = -j k0 int X G dS' - (j/k0) grad int (div' X) G dS',
//!   K{X}(r) =  int grad_r G x X dS'   (principal value on the surface),
//! the exterior null-field conditions tested in both the tangential and the
//! rotated-tangential sense combine, with weight alpha, into the 2N x 2N
//! system C [J; M] = b whose blocks are
//!   C_JJ = ((2-a)/2) G  - a P_Lt - (1-a) P_Kx,
//!   C_JM = (a/2)    Gx - (1-a) P_Lx + a P_Kt,
//!   C_MJ = ((1-a)/2) Gx + (1-a) P_Lx - a P_Kt,
//!   C_MM = ((1-a)/2) G  - a P_Lt - (1-a) P_Kx,
//! where G/Gx are the tangential and rotated Gram matrices and the four
//! primitives are P_Lt = <f_m, L{f_n}>, P_Lx = <f_m x n, L{f_n}>,
//! P_Kt = <f_m, K{f_n}>, P_Kx = <f_m x n, K{f_n}>. For every alpha the blocks
//! satisfy C_JJ - C_MM = G/2 and C_JM + C_MJ = Gx/2.
//!
//! Quadrature policy: triangle pairs whose centroids lie within a fixed
//! multiple of their summed diameters are "near" (this covers every
//! vertex-sharing pair and also close but non-touching panels, e.g. across a
//! thin slab) and use singularity-extracted inner moments; the outer triangle
//! is uniformly subdivided to resolve the edge-line kinks the extracted
//! potentials keep, and the self pair bumps the inner degree by one so inner
//! and outer nodes never coincide. All other pairs use plain Gauss rules of
//! equal degree on both legs, which makes the far double sums exactly
//! symmetric. The symmetric primitives P_Lt and P_Kt are additionally
//! symmetrized over each near pair (half weight per orientation), so their
//! matrices are symmetric to machine precision. Rows are assembled
//! independently and in a fixed order, making the result byte-identical for
//! any thread count.

use crate::bi::kernels::{moment_g0_near, moments_far, moments_near, SourceMoments};
use crate::bi::surface::Surface;
use crate::dense::DMat;
use crate::error::AssemblyError;
use crate::quadrature::{tri_rule, TriRule};
use crate::scalar::{jay, Cplx, Real};
use crate::sparse::{Accumulator, CscMatrix};
use crate::vec3::Vec3;
use rayon::prelude::*;

/// Quadrature and combination parameters of the boundary operator.
#[derive(Clone, Debug)]
pub struct BiParams<T> {
    /// Combination weight: alpha = 1 is purely tangential (electric-type)
    /// testing, alpha = 0 purely rotated (magnetic-type).
    pub alpha: T,
    /// Gauss degree for separated pairs, both legs.
    pub far_degree: usize,
    /// Outer and inner Gauss degree for near pairs.
    pub near_degree: usize,
    /// Uniform 4-way subdivision levels of the outer triangle on near pairs;
    /// clusters points toward the edge-line singularities of the inner
    /// potentials, which plain Gauss resolves poorly.
    pub near_split: usize,
}

impl<T: Real> Default for BiParams<T> {
    fn default() -> Self {
        Self {
            alpha: T::lit(0.5),
            far_degree: 4,
            near_degree: 6,
            near_split: 2,
        }
    }
}

/// Assembled boundary operator: dense combined blocks plus the sparse Gram
/// matrices used for identity wiring, preconditioning and norms.
pub struct BiSystem<T> {
    /// Combined operator, (2N) x (2N): rows [0,N) test the J equation, rows
    /// [N,2N) the M equation; columns [0,N) multiply J, columns [N,2N) M.
    pub c: DMat<T>,
    /// Tangential Gram <f_m, f_n>, symmetric positive definite.
    pub gram: CscMatrix<T>,
    /// Rotated Gram <f_m, n x f_n>, antisymmetric.
    pub gramx: CscMatrix<T>,
    pub alpha: T,
    pub k0: T,
    pub n_rwg: usize,
}

impl<T: Real> BiSystem<T> {
    pub fn cjj(&self, m: usize, n: usize) -> Cplx<T> {
        self.c.get(m, n)
    }

    pub fn cjm(&self, m: usize, n: usize) -> Cplx<T> {
        self.c.get(m, self.n_rwg + n)
    }

    pub fn cmj(&self, m: usize, n: usize) -> Cplx<T> {
        self.c.get(self.n_rwg + m, n)
    }

    pub fn cmm(&self, m: usize, n: usize) -> Cplx<T> {
        self.c.get(self.n_rwg + m, self.n_rwg + n)
    }
}

/// Near-pair radius as a multiple of the two triangles' summed diameters.
/// Any vertex-sharing pair is within 2/3, so 3/4 also covers close but
/// non-touching panels (opposite walls of a thin slab, for instance).
const NEAR_FACTOR: f64 = 0.75;

/// Shared read-only state for row assembly.
pub(crate) struct OpCtx<'a, T> {
    surf: &'a Surface<T>,
    k0: T,
    rule_far: TriRule<T>,
    rule_near: TriRule<T>,
    rule_self: TriRule<T>,
    /// Per triangle: sorted indices of the near triangles (itself included).
    near: Vec<Vec<usize>>,
    verts: Vec<[Vec3<T>; 3]>,
    /// Barycentric corners of the 4^near_split outer subcells.
    cells: Vec<[[T; 3]; 3]>,
    /// Area fraction of one subcell.
    cell_frac: T,
    /// Nested pair of line rules on [0,1] for the adaptive boundary
    /// integrals of the test triangle.
    line8: Vec<(T, T)>,
    line16: Vec<(T, T)>,
}

/// Smoothstep reparametrization of [0,1]: x = u^3 (10 - 15u + 6u^2). Its
/// derivative vanishes quadratically at both endpoints, which absorbs the
/// rho ln(rho) kinks the potentials have at triangle corners.
fn line_map<T: Real>(u: T) -> (T, T) {
    let u2 = u * u;
    let om = T::one() - u;
    (
        u2 * u * (T::lit(10.0) - T::lit(15.0) * u + T::lit(6.0) * u2),
        T::lit(30.0) * u2 * om * om,
    )
}

fn split_cells<T: Real>(levels: usize) -> Vec<[[T; 3]; 3]> {
    let one = T::one();
    let zero = T::zero();
    let mut cells = vec![[[one, zero, zero], [zero, one, zero], [zero, zero, one]]];
    let mid = |a: [T; 3], b: [T; 3]| {
        [
            (a[0] + b[0]) * T::lit(0.5),
            (a[1] + b[1]) * T::lit(0.5),
            (a[2] + b[2]) * T::lit(0.5),
        ]
    };
    for _ in 0..levels {
        let mut next = Vec::with_capacity(cells.len() * 4);
        for c in &cells {
            let m01 = mid(c[0], c[1]);
            let m12 = mid(c[1], c[2]);
            let m02 = mid(c[0], c[2]);
            next.push([c[0], m01, m02]);
            next.push([m01, c[1], m12]);
            next.push([m02, m12, c[2]]);
            next.push([m01, m12, m02]);
        }
        cells = next;
    }
    cells
}

impl<'a, T: Real> OpCtx<'a, T> {
    pub(crate) fn new(
        surf: &'a Surface<T>,
        k0: T,
        params: &BiParams<T>,
    ) -> Result<Self, AssemblyError> {
        let nt = surf.tris.len();
        let diam: Vec<T> = (0..nt)
            .map(|t| {
                let v = surf.tri_verts(t);
                v[0].dist(v[1]).max(v[1].dist(v[2])).max(v[2].dist(v[0]))
            })
            .collect();
        let factor = T::lit(NEAR_FACTOR);
        let near = (0..nt)
            .map(|t| {
                (0..nt)
                    .filter(|&s| {
                        surf.tris[t].centroid.dist(surf.tris[s].centroid)
                            <= factor * (diam[t] + diam[s])
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            surf,
            k0,
            rule_far: tri_rule(params.far_degree)?,
            rule_near: tri_rule(params.near_degree)?,
            rule_self: tri_rule(params.near_degree + 1)?,
            near,
            verts: (0..nt).map(|t| surf.tri_verts(t)).collect(),
            cells: split_cells(params.near_split),
            cell_frac: T::lit(1.0 / 4f64.powi(params.near_split as i32)),
            line8: crate::quadrature::gauss_legendre_01(8),
            line16: crate::quadrature::gauss_legendre_01(16),
        })
    }

    /// Outer quadrature points and weights over the subdivided triangle.
    fn near_points(&self, v: &[Vec3<T>; 3], two_a: T) -> Vec<(Vec3<T>, T)> {
        let mut out = Vec::with_capacity(self.cells.len() * self.rule_near.points.len());
        for cell in &self.cells {
            let cv = [
                bary_point(v, &cell[0]),
                bary_point(v, &cell[1]),
                bary_point(v, &cell[2]),
            ];
            for q in &self.rule_near.points {
                out.push((bary_point(&cv, &q.bary), q.weight * two_a * self.cell_frac));
            }
        }
        out
    }
}

fn bary_point<T: Real>(v: &[Vec3<T>; 3], b: &[T; 3]) -> Vec3<T> {
    v[0] * b[0] + v[1] * b[1] + v[2] * b[2]
}

/// Adaptive integral of g0_s(r) f_m(r).(b - a) along one test edge in the
/// mapped coordinate. Bisection catches the interior quasi-kinks a grazing
/// edge picks up where its projection crosses the source boundary; machine
/// cost stays small because only the scalar moment is needed.
fn edge_potential_integral<T: Real>(
    ctx: &OpCtx<T>,
    s: usize,
    rule_in: &TriRule<T>,
    a: Vec3<T>,
    b: Vec3<T>,
    p_m: Vec3<T>,
    c_m: T,
) -> Cplx<T> {
    let area_s = ctx.surf.tris[s].area;
    let seg = |u0: T, u1: T, rule: &[(T, T)]| -> (Cplx<T>, T) {
        let du = u1 - u0;
        let mut acc = Cplx::new(T::zero(), T::zero());
        let mut l1 = T::zero();
        for &(ul, wl) in rule {
            let (x, dx) = line_map(u0 + du * ul);
            let rl = a + (b - a) * x;
            let g0 = moment_g0_near(&ctx.verts[s], area_s, rl, ctx.k0, rule_in);
            let coef = ((rl - p_m) * c_m).dot(b - a) * (wl * dx * du);
            acc += g0 * coef;
            l1 = l1 + g0.norm() * coef.abs();
        }
        (acc, l1)
    };
    let (c16, l1) = seg(T::zero(), T::one(), &ctx.line16);
    let (c8, _) = seg(T::zero(), T::one(), &ctx.line8);
    let tol0 = T::lit(1e-9) * (l1 + c16.norm());
    if (c16 - c8).norm() <= tol0 {
        return c16;
    }
    let half = T::lit(0.5);
    let mut acc = Cplx::new(T::zero(), T::zero());
    let mut stack = vec![
        (half, T::one(), tol0 * half, 1usize),
        (T::zero(), half, tol0 * half, 1usize),
    ];
    while let Some((u0, u1, tol, depth)) = stack.pop() {
        let (f16, _) = seg(u0, u1, &ctx.line16);
        if depth >= 8 {
            acc += f16;
            continue;
        }
        let (f8, _) = seg(u0, u1, &ctx.line8);
        if (f16 - f8).norm() <= tol {
            acc += f16;
            continue;
        }
        let um = (u0 + u1) * half;
        stack.push((um, u1, tol * half, depth + 1));
        stack.push((u0, um, tol * half, depth + 1));
    }
    acc
}

/// The four primitive operator rows for test function `m`: (P_Lt, P_Lx,
/// P_Kt, P_Kx) against every trial function.
pub(crate) fn primitive_rows<T: Real>(ctx: &OpCtx<T>, m: usize) -> [Vec<Cplx<T>>; 4] {
    let surf = ctx.surf;
    let n_rwg = surf.n_rwg();
    let zero = Cplx::new(T::zero(), T::zero());
    let mut plt = vec![zero; n_rwg];
    let mut plx = vec![zero; n_rwg];
    let mut pkt = vec![zero; n_rwg];
    let mut pkx = vec![zero; n_rwg];
    let k0 = ctx.k0;
    let jk = jay::<T>() * k0;
    let jok = jay::<T>() / k0;
    let half = T::lit(0.5);

    let pair_m = &surf.rwg[m];
    for &t in &[pair_m.tri_plus, pair_m.tri_minus] {
        let tri_t = &surf.tris[t];
        let vt = &ctx.verts[t];
        let two_at = tri_t.area * T::lit(2.0);
        let (sg_m, p_m) = surf.rwg_side(m, t);
        let c_m = sg_m * pair_m.len / two_at;
        let d_m = sg_m * pair_m.len / tri_t.area;
        let nearset = &ctx.near[t];

        // Accumulates one source triangle's moments into the rows. `tau_w`
        // scales the symmetrized primitives, `w` the one-sided ones, `gw`
        // the gradient part of P_Lx (zero on near pairs, where the line
        // pass below supplies it instead).
        let mut add = |s: usize,
                       mom: &SourceMoments<T>,
                       rq: Vec3<T>,
                       fm: Vec3<T>,
                       u: Vec3<T>,
                       w: T,
                       tau_w: T,
                       gw: T| {
            let area_s = surf.tris[s].area;
            for k in 0..3 {
                let Some((nn, _)) = surf.tri_rwg[s][k] else {
                    continue;
                };
                let (sg_n, p_n) = surf.rwg_side(nn, s);
                let c_n = sg_n * surf.rwg[nn].len / (area_s * T::lit(2.0));
                let d_n = sg_n * surf.rwg[nn].len / area_s;
                let cnc = Cplx::new(c_n, T::zero());
                let w_l = (mom.g1 - p_n.to_complex().scale(mom.g0)).scale(cnc);
                let kv = mom.gv.cross_real(rq - p_n).scale(cnc);
                plt[nn] += (-jk * w_l.dot_real(fm) + jok * (d_m * d_n) * mom.g0) * tau_w;
                pkt[nn] += kv.dot_real(fm) * tau_w;
                plx[nn] +=
                    (-jk * w_l.dot_real(u)) * w - jok * d_n * mom.gv.dot_real(u) * gw;
                pkx[nn] += kv.dot_real(u) * w;
            }
        };

        // Far pass: equal-degree Gauss on both legs.
        for q in &ctx.rule_far.points {
            let rq = bary_point(vt, &q.bary);
            let w = q.weight * two_at;
            let fm = (rq - p_m) * c_m;
            let u = fm.cross(tri_t.normal);
            for s in 0..surf.tris.len() {
                if nearset.binary_search(&s).is_ok() {
                    continue;
                }
                let mom = moments_far(&ctx.verts[s], surf.tris[s].area, rq, k0, &ctx.rule_far);
                add(s, &mom, rq, fm, u, w, w, w);
            }
        }

        // Near pass, test-side orientation: singularity-extracted moments,
        // half weight on the symmetrized primitives.
        for &(rq, w) in &ctx.near_points(vt, two_at) {
            let fm = (rq - p_m) * c_m;
            let u = fm.cross(tri_t.normal);
            for &s in nearset {
                let rule_in = if s == t { &ctx.rule_self } else { &ctx.rule_near };
                let mom = moments_near(&ctx.verts[s], surf.tris[s].area, rq, k0, rule_in);
                add(s, &mom, rq, fm, u, w, w * half, T::zero());
            }
        }

        // Near gradient part of P_Lx as a boundary integral: the rotated
        // basis f_m x n is surface divergence free on the flat triangle, so
        //   int_t (f_m x n) . grad Phi dS = sum_edges int (f_m . e) Phi dl
        // with e the CCW edge vector; this trades the log-singular area
        // integrand for line integrals of the continuous potential.
        for &s in nearset {
            let rule_in = if s == t { &ctx.rule_self } else { &ctx.rule_near };
            let mut acc = Cplx::new(T::zero(), T::zero());
            for e in 0..3 {
                acc += edge_potential_integral(
                    ctx,
                    s,
                    rule_in,
                    vt[e],
                    vt[(e + 1) % 3],
                    p_m,
                    c_m,
                );
            }
            for k in 0..3 {
                let Some((nn, _)) = surf.tri_rwg[s][k] else {
                    continue;
                };
                let (sg_n, _) = surf.rwg_side(nn, s);
                let d_n = sg_n * surf.rwg[nn].len / surf.tris[s].area;
                plx[nn] -= jok * d_n * acc;
            }
        }

        // Near pass, swapped orientation: outer points on the source
        // triangle, inner moments over the test triangle; contributes the
        // other half of the symmetrized primitives.
        for &s in nearset {
            let tri_s = &surf.tris[s];
            let vs = &ctx.verts[s];
            let two_as = tri_s.area * T::lit(2.0);
            let rule_in = if s == t { &ctx.rule_self } else { &ctx.rule_near };
            for &(rq, wq) in &ctx.near_points(vs, two_as) {
                let w = wq * half;
                let mom_t = moments_near(vt, tri_t.area, rq, k0, rule_in);
                let cmc = Cplx::new(c_m, T::zero());
                let w_l_m = (mom_t.g1 - p_m.to_complex().scale(mom_t.g0)).scale(cmc);
                let kv_m = mom_t.gv.cross_real(rq - p_m).scale(cmc);
                for k in 0..3 {
                    let Some((nn, _)) = surf.tri_rwg[s][k] else {
                        continue;
                    };
                    let (sg_n, p_n) = surf.rwg_side(nn, s);
                    let c_n = sg_n * surf.rwg[nn].len / two_as;
                    let d_n = sg_n * surf.rwg[nn].len / tri_s.area;
                    let fn_q = (rq - p_n) * c_n;
                    plt[nn] += (-jk * w_l_m.dot_real(fn_q) + jok * (d_m * d_n) * mom_t.g0) * w;
                    pkt[nn] += kv_m.dot_real(fn_q) * w;
                }
            }
        }
    }
    [plt, plx, pkt, pkx]
}

/// Tangential and rotated Gram matrices, degree-4 Gauss (exact for the
/// quadratic integrands).
fn assemble_grams<T: Real>(
    surf: &Surface<T>,
) -> Result<(CscMatrix<T>, CscMatrix<T>), AssemblyError> {
    let n = surf.n_rwg();
    let rule = tri_rule::<T>(4)?;
    let mut ag = Accumulator::new(n, n);
    let mut ax = Accumulator::new(n, n);
    for t in 0..surf.tris.len() {
        let vt = surf.tri_verts(t);
        let nrm = surf.tris[t].normal;
        let two_a = surf.tris[t].area * T::lit(2.0);
        let locals: Vec<usize> = surf.tri_rwg[t].iter().flatten().map(|&(nn, _)| nn).collect();
        for q in &rule.points {
            let rq = bary_point(&vt, &q.bary);
            let w = q.weight * two_a;
            for &ni in &locals {
                let fi = surf.rwg_value(ni, t, rq);
                for &nj in &locals {
                    let fj = surf.rwg_value(nj, t, rq);
                    ag.add(ni, nj, Cplx::new(w * fi.dot(fj), T::zero()));
                    ax.add(ni, nj, Cplx::new(w * fi.dot(nrm.cross(fj)), T::zero()));
                }
            }
        }
    }
    Ok((ag.build(), ax.build()))
}

/// Assemble the combined boundary operator on `surf` at wavenumber `k0`.
pub fn assemble_bi<T: Real>(
    surf: &Surface<T>,
    k0: T,
    params: &BiParams<T>,
) -> Result<BiSystem<T>, AssemblyError> {
    let n = surf.n_rwg();
    let (gram, gramx) = assemble_grams(surf)?;
    let ctx = OpCtx::new(surf, k0, params)?;
    let alpha = params.alpha;
    let beta = T::one() - alpha;
    let w_jj = (T::lit(2.0) - alpha) * T::lit(0.5);
    let w_jm = alpha * T::lit(0.5);
    let w_mj = beta * T::lit(0.5);
    let w_mm = beta * T::lit(0.5);

    let row_len = 2 * n;
    let mut c = DMat::zeros(row_len, row_len);
    let (top, bot) = c.data_mut().split_at_mut(n * row_len);
    top.par_chunks_mut(row_len)
        .zip(bot.par_chunks_mut(row_len))
        .enumerate()
        .for_each(|(m, (row_j, row_m))| {
            let [plt, plx, pkt, pkx] = primitive_rows(&ctx, m);
            for nn in 0..n {
                row_j[nn] = -plt[nn] * alpha - pkx[nn] * beta;
                row_j[n + nn] = -plx[nn] * beta + pkt[nn] * alpha;
                row_m[nn] = plx[nn] * beta - pkt[nn] * alpha;
                row_m[n + nn] = -plt[nn] * alpha - pkx[nn] * beta;
            }
            // Identity parts from the sparse Grams: row m of the symmetric G
            // is its column m; row m of the antisymmetric Gx is minus its
            // column m.
            let (gidx, gval) = gram.col(m);
            for (&nn, &gv) in gidx.iter().zip(gval) {
                row_j[nn] += gv * w_jj;
                row_m[n + nn] += gv * w_mm;
            }
            let (xidx, xval) = gramx.col(m);
            for (&nn, &xv) in xidx.iter().zip(xval) {
                row_j[n + nn] -= xv * w_jm;
                row_m[nn] -= xv * w_mj;
            }
        });

    for (idx, v) in c.data().iter().enumerate() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(AssemblyError::NonFiniteEntry {
                row: idx / row_len,
                col: idx % row_len,
            });
        }
    }
    Ok(BiSystem {
        c,
        gram,
        gramx,
        alpha,
        k0,
        n_rwg: n,
    })
}
