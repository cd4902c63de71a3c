//! Free-space Green function, its singularity-extracted smooth part, and the
//! inner (source-triangle) moments used by the integral operators.
//!
//! With R = |r - r'| and the e^{j omega t} convention,
//!   G   = e^{-j k0 R} / (4 pi R),
//!   Gs  = G - 1/(4 pi R)                     (bounded, bounded gradient),
//!   Gss = G - 1/(4 pi R) + k0^2 R / (8 pi)   (additionally C^2 in r'),
//! and every operator entry reduces to three moments of one source triangle
//! seen from one observation point:
//!   g0 = int G dS',   g1 = int r' G dS',   gv = int grad_r G dS'.
//! Since grad_r G is parallel to (r - r'), the cross moment obeys
//! int (grad_r G) x r' dS' = gv x r exactly, so no fourth moment is needed.
//! Far pairs integrate G directly; near pairs split off both the 1/(4 pi R)
//! pole and the k0^2 R/(8 pi) kink into closed-form statics (the kink's
//! curvature blows up like 1/R, which fixed Gauss rules cannot absorb) and
//! quadrate only the C^2 remainder Gss.

use crate::bi::statics::tri_statics;
use crate::quadrature::TriRule;
use crate::scalar::{cre, jay, Cplx, Real};
use crate::vec3::{CVec3, Vec3};

/// Below this k0*R the smooth kernels switch to Taylor series; above it the
/// explicit expressions lose at most ~1e-10 relative to cancellation.
const SERIES_KR: f64 = 1e-3;

fn four_pi<T: Real>() -> T {
    T::lit(4.0 * std::f64::consts::PI)
}

/// G = e^{-j k0 R} / (4 pi R).
pub fn green<T: Real>(k0: T, dist: T) -> Cplx<T> {
    (-jay::<T>() * k0 * dist).exp() / (four_pi::<T>() * dist)
}

/// grad_r G = -(1 + j k0 R) e^{-j k0 R} (r - r') / (4 pi R^3).
pub fn grad_green<T: Real>(k0: T, r: Vec3<T>, rp: Vec3<T>) -> CVec3<T> {
    let dr = r - rp;
    let dist = dr.norm();
    let f = -(Cplx::new(T::one(), k0 * dist) * (-jay::<T>() * k0 * dist).exp())
        / (four_pi::<T>() * dist * dist * dist);
    dr.to_complex().scale(f)
}

/// Gs = (e^{-j k0 R} - 1) / (4 pi R); finite value -j k0 / (4 pi) at R = 0.
pub fn green_smooth<T: Real>(k0: T, dist: T) -> Cplx<T> {
    let kr = k0 * dist;
    if kr < T::lit(SERIES_KR) {
        let x = -jay::<T>() * kr;
        let poly = Cplx::new(T::one(), T::zero())
            + x * cre::<T>(0.5)
            + x * x * cre::<T>(1.0 / 6.0)
            + x * x * x * cre::<T>(1.0 / 24.0);
        -jay::<T>() * k0 * poly / four_pi::<T>()
    } else {
        ((-jay::<T>() * kr).exp() - Cplx::new(T::one(), T::zero())) / (four_pi::<T>() * dist)
    }
}

/// grad_r Gs = [1 - (1 + j k0 R) e^{-j k0 R}] (r - r') / (4 pi R^3);
/// direction-free zero at R = 0.
pub fn grad_green_smooth<T: Real>(k0: T, r: Vec3<T>, rp: Vec3<T>) -> CVec3<T> {
    let dr = r - rp;
    let dist = dr.norm();
    if dist == T::zero() {
        return CVec3::zero();
    }
    let kr = k0 * dist;
    let f = if kr < T::lit(SERIES_KR) {
        // [1 - (1 - x) e^x] / R^2 with x = -j k0 R, expanded through x^4.
        let k2 = k0 * k0;
        Cplx::new(
            k2 * (kr * kr * T::lit(0.125) - T::lit(0.5)),
            k2 * kr * T::lit(1.0 / 3.0),
        ) / (four_pi::<T>() * dist)
    } else {
        let num = Cplx::new(T::one(), T::zero())
            - Cplx::new(T::one(), kr) * (-jay::<T>() * kr).exp();
        num / (four_pi::<T>() * dist * dist * dist)
    };
    dr.to_complex().scale(f)
}

/// Gss = Gs + k0^2 R / (8 pi); C^2 in r', value -j k0 / (4 pi) at R = 0.
pub fn green_smooth2<T: Real>(k0: T, dist: T) -> Cplx<T> {
    let kr = k0 * dist;
    if kr < T::lit(SERIES_KR) {
        // [-j k0 (1 - (k0 R)^2/6 + (k0 R)^4/120) + k0^4 R^3/24] / (4 pi).
        let kr2 = kr * kr;
        Cplx::new(
            k0 * kr2 * kr * T::lit(1.0 / 24.0),
            -k0 * (T::one() - kr2 * T::lit(1.0 / 6.0) + kr2 * kr2 * T::lit(1.0 / 120.0)),
        ) / four_pi::<T>()
    } else {
        green_smooth(k0, dist) + Cplx::new(k0 * kr / (T::lit(2.0) * four_pi::<T>()), T::zero())
    }
}

/// grad_r Gss = [1 - (1 + j k0 R) e^{-j k0 R} + (k0 R)^2/2] (r-r')/(4 pi R^3);
/// C^1 in r', zero at R = 0.
pub fn grad_green_smooth2<T: Real>(k0: T, r: Vec3<T>, rp: Vec3<T>) -> CVec3<T> {
    let dr = r - rp;
    let dist = dr.norm();
    if dist == T::zero() {
        return CVec3::zero();
    }
    let kr = k0 * dist;
    let f = if kr < T::lit(SERIES_KR) {
        // Numerator series x^3/3 + x^4/8 + x^5/30 with x = -j k0 R; the x^2
        // term cancels against the extracted kink exactly.
        let k3 = k0 * k0 * k0;
        Cplx::new(
            k3 * kr * T::lit(0.125),
            k3 * (T::lit(1.0 / 3.0) - kr * kr * T::lit(1.0 / 30.0)),
        ) / four_pi::<T>()
    } else {
        let num = Cplx::new(T::one() + kr * kr * T::lit(0.5), T::zero())
            - Cplx::new(T::one(), kr) * (-jay::<T>() * kr).exp();
        num / (four_pi::<T>() * dist * dist * dist)
    };
    dr.to_complex().scale(f)
}

/// Moments of one source triangle at one observation point.
#[derive(Clone, Copy, Debug)]
pub struct SourceMoments<T> {
    /// int G dS'.
    pub g0: Cplx<T>,
    /// int r' G dS'.
    pub g1: CVec3<T>,
    /// int grad_r G dS'.
    pub gv: CVec3<T>,
}

/// Moments by plain quadrature of the full kernel; observation point must be
/// well separated from the triangle.
pub fn moments_far<T: Real>(
    verts: &[Vec3<T>; 3],
    area: T,
    r: Vec3<T>,
    k0: T,
    rule: &TriRule<T>,
) -> SourceMoments<T> {
    let two_a = area * T::lit(2.0);
    let mut g0 = Cplx::new(T::zero(), T::zero());
    let mut g1 = CVec3::zero();
    let mut gv = CVec3::zero();
    for q in &rule.points {
        let rp = verts[0] * q.bary[0] + verts[1] * q.bary[1] + verts[2] * q.bary[2];
        let w = q.weight * two_a;
        let g = green(k0, r.dist(rp)) * w;
        g0 += g;
        g1 += rp.to_complex().scale(g);
        gv += grad_green(k0, r, rp).scale(Cplx::new(w, T::zero()));
    }
    SourceMoments { g0, g1, gv }
}

/// The scalar moment g0 alone, by the same singularity extraction as
/// `moments_near`; cheaper when the vector moments are not needed.
pub fn moment_g0_near<T: Real>(
    verts: &[Vec3<T>; 3],
    area: T,
    r: Vec3<T>,
    k0: T,
    rule: &TriRule<T>,
) -> Cplx<T> {
    let st = tri_statics(verts, r);
    let fp = four_pi::<T>();
    let ck = -k0 * k0 / (T::lit(2.0) * fp);
    let mut g0 = Cplx::new(st.i0 / fp + ck * st.ir1, T::zero());
    let two_a = area * T::lit(2.0);
    for q in &rule.points {
        let rp = verts[0] * q.bary[0] + verts[1] * q.bary[1] + verts[2] * q.bary[2];
        g0 += green_smooth2(k0, r.dist(rp)) * (q.weight * two_a);
    }
    g0
}

/// Moments by singularity extraction: closed-form statics for the 1/(4 pi R)
/// and k0^2 R/(8 pi) parts plus quadrature of the C^2 remainder. Valid for
/// any observation point, including points on or inside the triangle.
pub fn moments_near<T: Real>(
    verts: &[Vec3<T>; 3],
    area: T,
    r: Vec3<T>,
    k0: T,
    rule: &TriRule<T>,
) -> SourceMoments<T> {
    let st = tri_statics(verts, r);
    let fp = four_pi::<T>();
    let two_a = area * T::lit(2.0);
    // Statics of the extracted pair: 1/(4 pi R) - k0^2 R/(8 pi).
    let ck = -k0 * k0 / (T::lit(2.0) * fp);
    let mut g0 = Cplx::new(st.i0 / fp + ck * st.ir1, T::zero());
    let g1s = (st.irho + st.proj * st.i0) / fp + (st.irho_r + st.proj * st.ir1) * ck;
    let mut g1 = g1s.to_complex();
    // grad of the extracted pair: igrad/(4 pi) + ck (d n i0 - irho), using
    // int grad_r R = d n I0 - Irho.
    let gvs = st.igrad / fp + (st.normal * (st.height * st.i0) - st.irho) * ck;
    let mut gv = gvs.to_complex();
    for q in &rule.points {
        let rp = verts[0] * q.bary[0] + verts[1] * q.bary[1] + verts[2] * q.bary[2];
        let w = q.weight * two_a;
        let gs = green_smooth2(k0, r.dist(rp)) * w;
        g0 += gs;
        g1 += rp.to_complex().scale(gs);
        gv += grad_green_smooth2(k0, r, rp).scale(Cplx::new(w, T::zero()));
    }
    SourceMoments { g0, g1, gv }
}
