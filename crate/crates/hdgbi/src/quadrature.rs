//! Quadrature rules on reference simplices.
//!
//! Rules are collapsed tensor products: Gauss-Legendre in the first direction
//! and Gauss-Jacobi (weight `(1-x)^alpha`) in the collapsed directions, so a
//! degree-d rule is exact for all polynomials of total degree <= d and every
//! weight is strictly positive at any degree. 1D nodes come from root
//! bracketing plus Newton polish on the orthonormal Jacobi recurrence;
//! weights are Christoffel numbers, so everything is accurate to machine
//! precision without transcribed tables.
//!
//! Weights sum to the reference simplex measure (1/2 for the triangle, 1/6
//! for the tetrahedron); physical integrals multiply by `2A` resp. `6V`.

use crate::error::AssemblyError;
use crate::scalar::Real;

/// Supported polynomial exactness degrees.
pub const MIN_DEGREE: usize = 1;
pub const MAX_DEGREE: usize = 10;

/// Quadrature point on a triangle: barycentric coordinates and weight.
#[derive(Clone, Copy, Debug)]
pub struct TriPoint<T> {
    pub bary: [T; 3],
    pub weight: T,
}

/// Quadrature point on a tetrahedron: barycentric coordinates and weight.
#[derive(Clone, Copy, Debug)]
pub struct TetPoint<T> {
    pub bary: [T; 4],
    pub weight: T,
}

/// Rule on the reference triangle, weights summing to 1/2.
#[derive(Clone, Debug)]
pub struct TriRule<T> {
    pub degree: usize,
    pub points: Vec<TriPoint<T>>,
}

/// Rule on the reference tetrahedron, weights summing to 1/6.
#[derive(Clone, Debug)]
pub struct TetRule<T> {
    pub degree: usize,
    pub points: Vec<TetPoint<T>>,
}

fn check_degree(degree: usize) -> Result<(), AssemblyError> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
        return Err(AssemblyError::UnsupportedQuadratureDegree { degree });
    }
    Ok(())
}

/// 1D Gauss rule count needed for polynomial exactness of `degree`.
fn points_1d(degree: usize) -> usize {
    degree / 2 + 1
}

/// Triangle rule exact for total degree `degree`.
pub fn tri_rule<T: Real>(degree: usize) -> Result<TriRule<T>, AssemblyError> {
    check_degree(degree)?;
    let n = points_1d(degree);
    let gu = gauss_jacobi_01::<T>(n, 0);
    let gv = gauss_jacobi_01::<T>(n, 1);
    let mut points = Vec::with_capacity(n * n);
    for &(v, wv) in &gv {
        for &(u, wu) in &gu {
            let x = u * (T::one() - v);
            let y = v;
            points.push(TriPoint {
                bary: [T::one() - x - y, x, y],
                weight: wu * wv,
            });
        }
    }
    Ok(TriRule { degree, points })
}

/// Tetrahedron rule exact for total degree `degree`.
pub fn tet_rule<T: Real>(degree: usize) -> Result<TetRule<T>, AssemblyError> {
    check_degree(degree)?;
    let n = points_1d(degree);
    let gu = gauss_jacobi_01::<T>(n, 0);
    let gv = gauss_jacobi_01::<T>(n, 1);
    let gw = gauss_jacobi_01::<T>(n, 2);
    let mut points = Vec::with_capacity(n * n * n);
    for &(w, ww) in &gw {
        for &(v, wv) in &gv {
            for &(u, wu) in &gu {
                let z = w;
                let y = v * (T::one() - w);
                let x = u * (T::one() - v) * (T::one() - w);
                points.push(TetPoint {
                    bary: [T::one() - x - y - z, x, y, z],
                    weight: wu * wv * ww,
                });
            }
        }
    }
    Ok(TetRule { degree, points })
}

/// Gauss rule on [0,1] with weight `(1-x)^alpha`, alpha a small non-negative
/// integer. Returns (node, weight) pairs; weights sum to `1/(alpha+1)`.
pub fn gauss_jacobi_01<T: Real>(n: usize, alpha: u32) -> Vec<(T, T)> {
    let rule = gauss_jacobi_m11(n, alpha as f64);
    let scale = 0.5f64.powi(alpha as i32 + 1);
    rule.into_iter()
        .map(|(t, w)| (T::lit((t + 1.0) * 0.5), T::lit(w * scale)))
        .collect()
}

/// Plain Gauss-Legendre on [0,1] (alpha = 0).
pub fn gauss_legendre_01<T: Real>(n: usize) -> Vec<(T, T)> {
    gauss_jacobi_01(n, 0)
}

/// Recurrence coefficients (a_k, b_k) for monic Jacobi polynomials with
/// weight (1-t)^alpha on [-1,1] (beta = 0). b_0 carries the total mass.
fn jacobi_coeffs(n: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let beta = 0.0f64;
    let mut av = Vec::with_capacity(n);
    let mut bv = Vec::with_capacity(n + 1);
    let s = alpha + beta;
    bv.push(2f64.powf(s + 1.0) * gamma_int(alpha) * gamma_int(beta) / gamma_int(s + 1.0));
    for k in 0..n {
        let kf = k as f64;
        let ak = if k == 0 {
            (beta - alpha) / (s + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
        };
        av.push(ak);
        let k1 = kf + 1.0;
        let bk1 = if k == 0 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
        } else {
            4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + s)
                / ((2.0 * k1 + s).powi(2) * (2.0 * k1 + s + 1.0) * (2.0 * k1 + s - 1.0))
        };
        bv.push(bk1);
    }
    (av, bv)
}

/// Gamma(x+1) for small non-negative arguments used above (x integer here).
fn gamma_int(x: f64) -> f64 {
    // x in {0, 1, 2, ...}: Gamma(x+1) = x!
    let mut acc = 1.0;
    let mut k = x;
    while k > 0.5 {
        acc *= k;
        k -= 1.0;
    }
    acc
}

/// Evaluate the orthonormal Jacobi polynomial p_n and its derivative at t,
/// along with the Christoffel denominator `sum_{k<n} p_k(t)^2`.
fn eval_orthonormal(av: &[f64], bv: &[f64], n: usize, t: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0f64; // p_{-1}
    let mut p = 1.0 / bv[0].sqrt(); // p_0
    let mut dp_prev = 0.0f64;
    let mut dp = 0.0f64;
    let mut christoffel = 0.0f64;
    for k in 0..n {
        christoffel += p * p;
        let sb_next = bv[k + 1].sqrt();
        let sb = if k == 0 { 0.0 } else { bv[k].sqrt() };
        let p_next = ((t - av[k]) * p - sb * p_prev) / sb_next;
        let dp_next = (p + (t - av[k]) * dp - sb * dp_prev) / sb_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, christoffel)
}

/// Gauss-Jacobi rule on [-1,1] with weight (1-t)^alpha, machine precision.
fn gauss_jacobi_m11(n: usize, alpha: f64) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let (av, bv) = jacobi_coeffs(n, alpha);
    // Bracket the n simple roots of p_n by sampling.
    let samples = (80 * n).max(400);
    let mut brackets = Vec::with_capacity(n);
    let mut t_prev = -1.0f64;
    let mut f_prev = eval_orthonormal(&av, &bv, n, t_prev).0;
    for i in 1..=samples {
        let t = -1.0 + 2.0 * (i as f64) / (samples as f64);
        let f = eval_orthonormal(&av, &bv, n, t).0;
        if f_prev == 0.0 {
            brackets.push((t_prev, t_prev));
        } else if f_prev * f < 0.0 {
            brackets.push((t_prev, t));
        }
        t_prev = t;
        f_prev = f;
    }
    assert_eq!(brackets.len(), n, "root bracketing failed for Gauss-Jacobi");
    brackets
        .into_iter()
        .map(|(mut lo, mut hi)| {
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = eval_orthonormal(&av, &bv, n, mid).0;
                let fl = eval_orthonormal(&av, &bv, n, lo).0;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fl * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let mut x = 0.5 * (lo + hi);
            for _ in 0..3 {
                let (p, dp, _) = eval_orthonormal(&av, &bv, n, x);
                if dp != 0.0 {
                    x -= p / dp;
                }
            }
            let (_, _, chr) = eval_orthonormal(&av, &bv, n, x);
            (x, 1.0 / chr)
        })
        .collect()
}
