//! Dense linear-algebra kernels.
//!
//! * [`log_abs_det`] — numerically stable `ln |det|` with sign, by row-pivoted
//!   triangular factorization accumulating logs of pivot magnitudes.
//! * [`unit_normal`] — unit normal of the span of `n` vectors in
//!   `(n+1)`-space, by modified Gram–Schmidt with one re-orthogonalization
//!   pass.
//! * [`dist_to_subspace`] — point-to-hyperplane distance `|⟨v, N⟩|`.
//!
//! Singularity is declared only on an exactly zero pivot column: for discrete
//! entry laws singular matrices occur with positive probability and must be
//! detected exactly, while continuous laws hit exact zeros with probability 0.

use crate::error::Error;
use crate::Result;

/// Dense square matrix, column-major (column `i` holds point `X_i`).
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// Builds from raw column-major storage of length `n·n`; rejects
    /// non-finite entries.
    pub fn from_raw(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain { what: "matrix dimension", value: 0.0 });
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "matrix entry" });
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.len();
        let mut data = Vec::with_capacity(n * n);
        for col in columns {
            if col.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: col.len() });
            }
            data.extend_from_slice(col);
        }
        SquareMatrix::from_raw(n, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        SquareMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.n..(col + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for col in 0..n {
            for row in 0..n {
                data[row * n + col] = self.data[col * n + row];
            }
        }
        SquareMatrix { n, data }
    }
}

/// Sign and log-magnitude of a determinant. `sign == 0` if and only if the
/// matrix is singular, in which case `log_abs` is `-inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDetResult {
    pub log_abs: f64,
    pub sign: i8,
}

impl LogDetResult {
    pub const SINGULAR: LogDetResult = LogDetResult { log_abs: f64::NEG_INFINITY, sign: 0 };

    pub fn is_singular(&self) -> bool {
        self.sign == 0
    }
}

/// `ln |det M|` and sign via LU factorization with partial (row) pivoting.
///
/// Works on a copy; the input is untouched. Non-finite entries are rejected
/// at [`SquareMatrix`] construction.
pub fn log_abs_det(m: &SquareMatrix) -> LogDetResult {
    let n = m.n;
    let mut a = m.data.clone();
    let mut sign = 1i8;
    let mut log_abs = 0.0f64;

    for k in 0..n {
        // pivot search in column k, rows k..n
        let col_k = &a[k * n..(k + 1) * n];
        let mut pivot_row = k;
        let mut pivot_abs = col_k[k].abs();
        for (offset, value) in col_k[k + 1..].iter().enumerate() {
            if value.abs() > pivot_abs {
                pivot_abs = value.abs();
                pivot_row = k + 1 + offset;
            }
        }
        if pivot_abs == 0.0 {
            return LogDetResult::SINGULAR;
        }
        if pivot_row != k {
            sign = -sign;
            // swapping rows in columns < k would only permute the discarded
            // L factor, so restrict the swap to the active block
            for col in k..n {
                a.swap(col * n + k, col * n + pivot_row);
            }
        }
        let pivot = a[k * n + k];
        log_abs += pivot.abs().ln();
        if pivot < 0.0 {
            sign = -sign;
        }
        // multipliers below the pivot
        let inv_pivot = 1.0 / pivot;
        for value in a[k * n + k + 1..(k + 1) * n].iter_mut() {
            *value *= inv_pivot;
        }
        // trailing update, column by column
        for col in k + 1..n {
            let (head, tail) = a.split_at_mut(col * n);
            let multipliers = &head[k * n + k + 1..(k + 1) * n];
            let col_j = &mut tail[..n];
            let head_value = col_j[k];
            for (x, &l) in col_j[k + 1..].iter_mut().zip(multipliers) {
                *x -= l * head_value;
            }
        }
    }
    LogDetResult { log_abs, sign }
}

/// Unit normal of the span of `n` linearly independent vectors in
/// `(n+1)`-space.
///
/// Orthonormalizes the input by modified Gram–Schmidt, then orthogonalizes
/// the standard basis vector with the largest residual against the span,
/// with one re-orthogonalization pass. The sign of the result is
/// unspecified; callers that need a symmetric law take absolute values or
/// randomize the sign.
pub fn unit_normal(vectors: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::Domain { what: "subspace dimension", value: 0.0 });
    }
    let dim = n + 1;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for y in vectors {
        if y.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: y.len() });
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "subspace vector" });
        }
        let scale = norm2(y);
        if scale == 0.0 {
            return Err(Error::DegenerateSubspace);
        }
        let mut v = y.clone();
        orthogonalize_against(&mut v, &basis);
        orthogonalize_against(&mut v, &basis);
        let residual = norm2(&v);
        if residual <= degenerate_tol(dim) * scale {
            return Err(Error::DegenerateSubspace);
        }
        let inv = 1.0 / residual;
        for x in v.iter_mut() {
            *x *= inv;
        }
        basis.push(v);
    }

    // Residual of e_i against the span is 1 − Σ_j Q[i,j]²; pick the largest.
    // Σ_i residual²(e_i) = dim − n = 1, so the best residual is ≥ 1/dim.
    let mut best_index = 0;
    let mut best_residual = f64::NEG_INFINITY;
    for i in 0..dim {
        let row_norm2: f64 = basis.iter().map(|q| q[i] * q[i]).sum();
        let residual = 1.0 - row_norm2;
        if residual > best_residual {
            best_residual = residual;
            best_index = i;
        }
    }
    let mut normal = vec![0.0; dim];
    normal[best_index] = 1.0;
    orthogonalize_against(&mut normal, &basis);
    orthogonalize_against(&mut normal, &basis);
    let len = norm2(&normal);
    if len == 0.0 {
        return Err(Error::DegenerateSubspace);
    }
    let inv = 1.0 / len;
    for x in normal.iter_mut() {
        *x *= inv;
    }
    Ok(normal)
}

fn degenerate_tol(dim: usize) -> f64 {
    64.0 * dim as f64 * f64::EPSILON
}

fn orthogonalize_against(v: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(v, q);
        for (x, &qx) in v.iter_mut().zip(q) {
            *x -= c * qx;
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Distance from `v` to the hyperplane with unit normal `normal`,
/// `|⟨v, normal⟩|`. The normal must have unit length within 1e-10.
pub fn dist_to_subspace(v: &[f64], normal: &[f64]) -> Result<f64> {
    if v.len() != normal.len() {
        return Err(Error::DimensionMismatch { expected: normal.len(), got: v.len() });
    }
    let deviation = (norm2(normal) - 1.0).abs();
    if deviation > 1e-10 {
        return Err(Error::NonUnitNormal { deviation });
    }
    Ok(dot(v, normal).abs())
}
