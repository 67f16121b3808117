//! Dense symmetric eigen-analysis, specialised to one question: how does a
//! given vector split across the eigenspaces of a real symmetric matrix.
//!
//! The matrix is reduced to tridiagonal form by Householder reflections and
//! the tridiagonal problem is solved by QL iteration with implicit shifts.
//! Eigenvectors are never formed; every orthogonal transformation is applied
//! to the vector instead, so the output is the vector expressed in the
//! eigenbasis.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Real symmetric matrix, row-major. Only the lower triangle is read by
/// [`spectral_components`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let v = self.get(i, j) + value;
        self.set(i, j, v);
    }
}

/// Eigenvalue paired with the component of the input vector along the
/// corresponding unit eigenvector. The sign of each component is arbitrary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralComponent {
    pub eigenvalue: f64,
    pub component: f64,
}

/// Decomposes `vector` over the eigenbasis of `matrix`. Consumes the matrix
/// as workspace.
pub fn spectral_components(mut matrix: SymmetricMatrix, vector: &[f64]) -> Result<Vec<SpectralComponent>> {
    let n = matrix.n;
    if vector.len() != n {
        return Err(Error::Contract(alloc::format!(
            "vector length {} does not match matrix dimension {n}",
            vector.len()
        )));
    }
    let mut y = vector.to_vec();
    let (mut d, mut e) = tridiagonalize(&mut matrix, &mut y);
    drop(matrix);
    tridiagonal_ql(&mut d, &mut e, &mut y)?;
    Ok(d
        .into_iter()
        .zip(y)
        .map(|(eigenvalue, component)| SpectralComponent { eigenvalue, component })
        .collect())
}

/// Householder reduction working on the lower triangle. Returns the diagonal
/// and the subdiagonal (`e[i]` couples `i` and `i + 1`, `e[n - 1] = 0`), and
/// applies every reflector to `y`.
fn tridiagonalize(a: &mut SymmetricMatrix, y: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let n = a.n;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        // column k below the diagonal is row entries a[i][k], i > k
        let lo = k + 1;
        let mut scale = 0.0;
        for i in lo..n {
            scale += a.data[i * n + k].abs();
        }
        d[k] = a.data[k * n + k];
        if scale == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let mut sigma = 0.0;
        for (vi, aik) in v[lo..n].iter_mut().zip(a.data[lo * n + k..].iter().step_by(n)) {
            *vi = aik / scale;
            sigma += *vi * *vi;
        }
        let x0 = v[lo];
        let alpha = if x0 >= 0.0 { -libm::sqrt(sigma) } else { libm::sqrt(sigma) };
        // H = I - beta v v^T maps x to alpha e_1
        v[lo] = x0 - alpha;
        let beta = 1.0 / (sigma - x0 * alpha);
        e[k] = alpha * scale;

        // w = beta * A v over the trailing block, from the lower triangle
        for wi in &mut w[lo..n] {
            *wi = 0.0;
        }
        for i in lo..n {
            let row = &a.data[i * n + lo..i * n + i];
            let vi = v[i];
            let acc = a.data[i * n + i] * vi + dot(row, &v[lo..i]);
            for (wj, r) in w[lo..i].iter_mut().zip(row) {
                *wj += r * vi;
            }
            w[i] += acc;
        }
        let mut vw = 0.0;
        for i in lo..n {
            w[i] *= beta;
            vw += v[i] * w[i];
        }
        let half = 0.5 * beta * vw;
        for i in lo..n {
            w[i] -= half * v[i];
        }
        // A <- A - v w^T - w v^T on the lower triangle
        for i in lo..n {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a.data[i * n + lo..i * n + i + 1];
            for ((r, vj), wj) in row.iter_mut().zip(&v[lo..=i]).zip(&w[lo..=i]) {
                *r -= vi * wj + wi * vj;
            }
        }

        let mut vy = 0.0;
        for i in lo..n {
            vy += v[i] * y[i];
        }
        let f = beta * vy;
        for i in lo..n {
            y[i] -= f * v[i];
        }
    }
    if n >= 2 {
        d[n - 2] = a.data[(n - 2) * n + n - 2];
        e[n - 2] = a.data[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        d[n - 1] = a.data[(n - 1) * n + n - 1];
        e[n - 1] = 0.0;
    }
    (d, e)
}

/// Dot product with four independent partial sums, so the loop vectorizes.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut lanes = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            lanes[k] += x[k] * y[k];
        }
    }
    (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]) + tail
}

const MAX_QL_ITERATIONS: u32 = 60;

/// QL with implicit Wilkinson-style shifts. Rotations that would update
/// eigenvector columns are applied to `u` in place.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], u: &mut [f64]) -> Result<()> {
    let n = d.len();
    let norm = d.iter().zip(e.iter()).map(|(a, b)| a.abs() + b.abs()).fold(0.0, f64::max);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                // relative to the neighbours, or to the whole matrix near zero
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd.max(norm) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::Contract(alloc::format!("QL iteration did not converge at index {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let ui1 = u[i + 1];
                u[i + 1] = s * u[i] + c * ui1;
                u[i] = c * u[i] - s * ui1;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
