//! Dense real-symmetric eigendecomposition.
//!
//! Householder reduction to tridiagonal form followed by implicit-shift QL
//! iteration (the EISPACK `tred2`/`tql2` pair), with every decomposition
//! carrying the residual it actually achieved.

use crate::error::{Error, Result};

/// Solver tolerance used when callers do not ask for one.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are treated as one eigenvalue.
pub const MULTIPLICITY_TOL: f64 = 1e-7;
/// QL iterations allowed per eigenvalue.
pub const MAX_SWEEPS: usize = 50;

/// Symmetric matrix; writes go through [`SymMatrix::set`], which mirrors
/// them, so the stored entries are exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, entries: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Fills the upper triangle (`i <= j`) from `f`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Accepts row-major data only if it is exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self::from_upper(n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .chunks_exact(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x / xᵀ x`.
    pub fn rayleigh(&self, x: &[f64]) -> f64 {
        let mx = self.mul_vec(x);
        dot(x, &mx) / dot(x, x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    /// `max_k ‖M g_k − λ_k g_k‖∞` at the time of construction.
    pub residual: f64,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `‖GᵀG − I‖∞` over the returned vectors.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(&self.vectors[a], &self.vectors[b]) - target).abs());
            }
        }
        worst
    }

    /// Indices whose eigenvalue lies within [`MULTIPLICITY_TOL`] of
    /// `values[k]`.
    pub fn eigenspace_of(&self, k: usize) -> std::ops::Range<usize> {
        let target = self.values[k];
        let close = |i: &usize| (self.values[*i] - target).abs() <= MULTIPLICITY_TOL;
        let lo = (0..=k).rev().take_while(close).last().unwrap_or(k);
        let hi = (k..self.dim()).take_while(close).last().unwrap_or(k);
        lo..hi + 1
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Full eigendecomposition of `m`.
///
/// Fails with [`Error::NoConvergence`] when QL exceeds [`MAX_SWEEPS`]
/// iterations on some eigenvalue or the final residual exceeds `tol · n`.
pub fn eigh(m: &SymMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::BadTolerance(tol));
    }
    let n = m.dim();
    if n == 0 {
        return Err(Error::DimensionMismatch(0, 0));
    }
    let mut z: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut z, &mut d, &mut e);
    let converged = tql2(&mut z, &mut d, &mut e);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let vectors: Vec<Vec<f64>> = order.iter().map(|&k| (0..n).map(|r| z[r][k]).collect()).collect();
    let mut out = EigenDecomposition { values, vectors, residual: 0.0 };
    out.residual = residual_of(m, &out);
    if !converged || out.residual > tol * n as f64 {
        return Err(Error::NoConvergence { residual: out.residual });
    }
    Ok(out)
}

/// Recomputes `max_k ‖M g_k − λ_k g_k‖∞` without trusting the stored value.
pub fn residual_check(m: &SymMatrix, d: &EigenDecomposition) -> Result<f64> {
    if m.dim() != d.dim() {
        return Err(Error::DimensionMismatch(m.dim(), d.dim()));
    }
    if let Some(bad) = d.vectors.iter().find(|v| v.len() != m.dim()) {
        return Err(Error::DimensionMismatch(m.dim(), bad.len()));
    }
    Ok(residual_of(m, d))
}

fn residual_of(m: &SymMatrix, d: &EigenDecomposition) -> f64 {
    d.values
        .iter()
        .zip(&d.vectors)
        .map(|(&lambda, g)| {
            m.mul_vec(g)
                .iter()
                .zip(g)
                .map(|(mg, gi)| (mg - lambda * gi).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Householder tridiagonalisation. On return `d` holds the diagonal, `e[1..]`
/// the subdiagonal, and `z` the accumulated orthogonal transform.
fn tred2(z: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = z[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = z[i - 1][j];
                z[i][j] = 0.0;
                z[j][i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                z[j][i] = f;
                g = e[j] + z[j][j] * f;
                for k in j + 1..i {
                    g += z[k][j] * d[k];
                    e[k] += z[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    z[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = z[i - 1][j];
                z[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        z[n - 1][i] = z[i][i];
        z[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = z[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += z[k][i + 1] * z[k][j];
                }
                for k in 0..=i {
                    z[k][j] -= g * d[k];
                }
            }
        }
        for row in z.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = z[n - 1][j];
        z[n - 1][j] = 0.0;
    }
    z[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`, rotating `z` along. Returns
/// false if some eigenvalue needed more than [`MAX_SWEEPS`] iterations.
fn tql2(z: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> bool {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return false;
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
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
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
                    for row in z.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
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
    true
}
