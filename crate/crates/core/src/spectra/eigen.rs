//! Dense complex eigenvalue kernel.
//!
//! Hermitian input: Householder reduction to a real symmetric tridiagonal
//! matrix followed by implicit QL iterations. General input: Householder
//! reduction to Hessenberg form followed by single-shift complex QR
//! iterations; eigenvectors then come from inverse iteration.

use thiserror::Error;

use crate::linalg::{solve, vec_norm, CMatrix, C64, ONE, ZERO};

/// Largest accepted dimension.
pub const MAX_DIM: usize = 4096;
/// `max |M - M^H|` at or below this selects the Hermitian path.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("matrix dimension {dim} exceeds the limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("eigenvalue iteration did not converge for a {dim}x{dim} matrix")]
    NoConvergence { dim: usize },
}

/// An eigenvalue with a unit-norm eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    pub vector: Vec<C64>,
}

fn check_shape(m: &CMatrix) -> Result<usize, EigenError> {
    if !m.is_square() {
        return Err(EigenError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() > MAX_DIM {
        return Err(EigenError::DimensionTooLarge {
            dim: m.rows(),
            max: MAX_DIM,
        });
    }
    Ok(m.rows())
}

/// All eigenvalues with algebraic multiplicity, unsorted. Hermitian input
/// yields exactly real values.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>, EigenError> {
    check_shape(m)?;
    if m.is_hermitian(HERMITIAN_TOL) {
        let (d, _) = hermitian(m, false)?;
        Ok(d.into_iter().map(|x| C64::new(x, 0.0)).collect())
    } else {
        general_eigenvalues(m)
    }
}

/// Eigenvalues with eigenvectors. Hermitian input gives an orthonormal basis;
/// otherwise each vector is obtained by inverse iteration.
pub fn eigenpairs(m: &CMatrix) -> Result<Vec<EigenPair>, EigenError> {
    let n = check_shape(m)?;
    if m.is_hermitian(HERMITIAN_TOL) {
        let (d, v) = hermitian(m, true)?;
        let v = v.expect("vectors requested");
        Ok(d.into_iter()
            .enumerate()
            .map(|(j, x)| EigenPair {
                value: C64::new(x, 0.0),
                vector: (0..n).map(|i| v[(i, j)]).collect(),
            })
            .collect())
    } else {
        general_eigenvalues(m)?
            .into_iter()
            .map(|lambda| {
                Ok(EigenPair {
                    value: lambda,
                    vector: inverse_iteration(m, lambda),
                })
            })
            .collect()
    }
}

/// `max_i |(M v - lambda v)_i|`.
pub fn residual(m: &CMatrix, lambda: C64, v: &[C64]) -> f64 {
    m.mul_vec(v)
        .iter()
        .zip(v)
        .map(|(mv, x)| (mv - lambda * x).norm())
        .fold(0.0, f64::max)
}

/// Householder tridiagonalization then QL. Returns the eigenvalues and,
/// if requested, the unitary matrix whose columns are the eigenvectors.
fn hermitian(m: &CMatrix, vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>), EigenError> {
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), vectors.then(|| CMatrix::zeros(0, 0))));
    }
    // Symmetrize so the reduction sees an exactly Hermitian matrix.
    let mut a = CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut q = vectors.then(|| CMatrix::identity(n));
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let len = n - k - 1;
        let off = k + 1;
        // p = S v, w = p - (v^H p) v, S <- S - 2 v w^H - 2 w v^H.
        let p: Vec<C64> = (0..len)
            .map(|i| (0..len).map(|j| a[(off + i, off + j)] * v[j]).sum())
            .collect();
        let kappa: C64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa * vi).collect();
        for i in 0..len {
            for j in 0..len {
                a[(off + i, off + j)] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }
        a[(off, k)] = alpha;
        a[(k, off)] = alpha.conj();
        for i in 1..len {
            a[(off + i, k)] = ZERO;
            a[(k, off + i)] = ZERO;
        }
        if let Some(q) = q.as_mut() {
            // Q <- Q H on columns off.., with H = I - 2 v v^H.
            for r in 0..n {
                let s: C64 = (0..len).map(|j| q[(r, off + j)] * v[j]).sum();
                for j in 0..len {
                    q[(r, off + j)] -= s * v[j].conj() * 2.0;
                }
            }
        }
    }
    // Diagonal phase change making the off-diagonal real and non-negative.
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n - 1 {
        let sub = a[(i + 1, i)];
        e[i + 1] = sub.norm();
        phases[i + 1] = if e[i + 1] == 0.0 {
            phases[i]
        } else {
            phases[i] * sub / e[i + 1]
        };
    }
    let mut z = vectors.then(|| vec![0.0; n * n]);
    if let Some(z) = z.as_mut() {
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
    }
    tql2(&mut d, &mut e, z.as_deref_mut())?;
    let vecs = match (q, z) {
        (Some(q), Some(z)) => Some(CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|l| q[(i, l)] * phases[l] * z[l * n + j]).sum()
        })),
        _ => None,
    };
    Ok((d, vecs))
}

/// Implicit QL on a symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e[1..]`; `z` (row-major, n x n) accumulates the rotations.
fn tql2(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<(), EigenError> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    let cap = 100 * n.max(1);
    let mut total = 0usize;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                total += 1;
                if total > cap {
                    return Err(EigenError::NoConvergence { dim: n });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zh = z[k * n + i + 1];
                            z[k * n + i + 1] = s * z[k * n + i] + c * zh;
                            z[k * n + i] = c * z[k * n + i] - s * zh;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Unitary reduction to upper Hessenberg form.
fn hessenberg(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    let mut a = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let off = k + 1;
        // A <- H A: rows off.., H = I - 2 v v^H.
        for j in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * a[(off + i, j)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                a[(off + i, j)] -= *vi * s * 2.0;
            }
        }
        // A <- A H: columns off..
        for r in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| a[(r, off + j)] * vj)
                .sum();
            for (j, vj) in v.iter().enumerate() {
                a[(r, off + j)] -= s * vj.conj() * 2.0;
            }
        }
        for i in off + 1..n {
            a[(i, k)] = ZERO;
        }
    }
    a
}

/// Shifted QR on the Hessenberg form; deflates one eigenvalue at a time.
fn general_eigenvalues(m: &CMatrix) -> Result<Vec<C64>, EigenError> {
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(m);
    let scale = h
        .data()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let cap = 100 * n;
    let mut total = 0usize;
    let mut values = vec![ZERO; n];
    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    loop {
        if hi == 0 {
            values[0] = h[(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            values[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(EigenError::NoConvergence { dim: n });
        }
        let mu = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, l, hi, mu);
    }
    Ok(values)
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closer to `d`.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// One explicit shifted QR step on rows/columns `l..=hi` using Givens rotations.
fn qr_step(h: &mut CMatrix, l: usize, hi: usize, mu: C64) {
    for i in l..=hi {
        h[(i, i)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - l);
    for k in l..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = x.norm().hypot(y.norm());
        let (c, s) = if r == 0.0 {
            (1.0, ZERO)
        } else if x.norm() == 0.0 {
            (0.0, y.conj() / y.norm())
        } else {
            (x.norm() / r, (x / x.norm()) * y.conj() / r)
        };
        for j in k..=hi {
            let (p, q) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = p * c + s * q;
            h[(k + 1, j)] = -s.conj() * p + q * c;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = l + idx;
        for i in l..=(k + 2).min(hi) {
            let (p, q) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = p * c + q * s.conj();
            h[(i, k + 1)] = -p * s + q * c;
        }
    }
    for i in l..=hi {
        h[(i, i)] += mu;
    }
}

/// Unit vector approximately in the kernel of `M - lambda I`.
fn inverse_iteration(m: &CMatrix, lambda: C64) -> Vec<C64> {
    let n = m.rows();
    let scale = 1.0 + lambda.norm() + m.data().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut v: Vec<C64> = (0..n)
        .map(|i| C64::new(1.0, 0.1 * (i as f64 + 1.0).sqrt()))
        .collect();
    let mut best = v.clone();
    let mut best_res = f64::INFINITY;
    for &delta in &[1e-12, 1e-10, 1e-8] {
        let mut shifted = m.clone();
        shifted.add_diagonal(-(lambda + C64::new(delta * scale, delta * scale)));
        for _ in 0..3 {
            let Some(x) = solve(&shifted, &v) else { break };
            let norm = vec_norm(&x);
            if !norm.is_finite() || norm == 0.0 {
                break;
            }
            v = x.into_iter().map(|z| z / norm).collect();
        }
        let res = residual(m, lambda, &v);
        if res < best_res {
            best_res = res;
            best = v.clone();
        }
        if best_res < 1e-12 * scale {
            break;
        }
    }
    best
}
