//! Dense exact linear algebra over any [`OrderedField`].
//!
//! Vectors are plain `Vec<F>` / `&[F]`. Pivoting always takes the lowest
//! eligible index so that results are reproducible.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{dim_mismatch, Error, Result};
use crate::field::OrderedField;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: OrderedField> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// `m x n` matrices with `m = 0` keep their width.
    pub fn from_rows_with_cols(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(dim_mismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(dim_mismatch("column length"));
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.row_iter().map(<[F]>::to_vec).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(dim_mismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a.clone() * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(dim_mismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self.row_iter().map(|row| dot(row, v)).collect())
    }

    /// `selfᵀ v` without materializing the transpose.
    pub fn transpose_mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.rows != v.len() {
            return Err(dim_mismatch("transpose times vector"));
        }
        let mut out = vec![F::zero(); self.cols];
        for (row, vi) in self.row_iter().zip(v) {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += &(a.clone() * vi);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(dim_mismatch("matrix sum"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * k).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Self> {
        if self.cols != other.cols {
            return Err(dim_mismatch("vstack column count"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        let zero = vec![F::zero(); self.rows];
        gaussian_solve(self, &zero)
            .map(|s| self.cols - s.nullspace.len())
            .unwrap_or(0)
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot<F: OrderedField>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x.clone() * y);
        }
    }
    acc
}

pub fn vec_add<F: OrderedField>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vec_sub<F: OrderedField>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vec_scale<F: OrderedField>(a: &[F], k: &F) -> Vec<F> {
    a.iter().map(|x| x.clone() * k).collect()
}

pub fn unit_vector<F: OrderedField>(n: usize, i: usize) -> Vec<F> {
    let mut e = vec![F::zero(); n];
    e[i] = F::one();
    e
}

/// Exact description of `{x : A x = b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolutionSet<F> {
    pub consistent: bool,
    /// A solution with all free variables set to zero (empty when inconsistent).
    pub particular: Vec<F>,
    /// One basis vector per free column, in column order.
    pub nullspace: Vec<Vec<F>>,
}

impl<F: OrderedField> LinearSolutionSet<F> {
    /// `particular + Σ tᵢ·basisᵢ`.
    pub fn point(&self, coefficients: &[F]) -> Vec<F> {
        let mut x = self.particular.clone();
        for (t, w) in coefficients.iter().zip(&self.nullspace) {
            for (xi, wi) in x.iter_mut().zip(w) {
                *xi += &(t.clone() * wi);
            }
        }
        x
    }

    /// Basis vectors as the columns of an `n x k` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.particular.len(), &self.nullspace)
            .expect("basis vectors share the ambient dimension")
    }
}

/// Solves `A x = b` by Gauss–Jordan elimination with first-nonzero pivoting.
pub fn gaussian_solve<F: OrderedField>(a: &Matrix<F>, b: &[F]) -> Result<LinearSolutionSet<F>> {
    if a.rows() != b.len() {
        return Err(dim_mismatch(format!(
            "{} rows but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    // Augmented rows [A | b].
    let mut rows: Vec<Vec<F>> = a
        .row_iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.to_vec();
            row.push(bi.clone());
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..n {
        if next == m {
            break;
        }
        let Some(p) = (next..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].inv()?;
        for v in rows[next].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v -= &(factor.clone() * pv);
                }
            }
        }
        pivots.push(col);
        next += 1;
    }

    if rows[next..].iter().any(|row| !row[n].is_zero()) {
        return Ok(LinearSolutionSet {
            consistent: false,
            particular: Vec::new(),
            nullspace: Vec::new(),
        });
    }

    let mut particular = vec![F::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = rows[r][n].clone();
    }
    let mut is_pivot = vec![false; n];
    for &col in &pivots {
        is_pivot[col] = true;
    }
    let nullspace = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut w = vec![F::zero(); n];
            w[free] = F::one();
            for (r, &col) in pivots.iter().enumerate() {
                w[col] = -rows[r][free].clone();
            }
            w
        })
        .collect();
    Ok(LinearSolutionSet {
        consistent: true,
        particular,
        nullspace,
    })
}

/// Inverse by Gauss–Jordan elimination on `[S | I]`.
pub fn invert<F: OrderedField>(s: &Matrix<F>) -> Result<Matrix<F>> {
    if !s.is_square() {
        return Err(dim_mismatch("inverse of a non-square matrix"));
    }
    let n = s.rows();
    let mut left = s.clone();
    let mut right = Matrix::<F>::identity(n);
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !left[(r, col)].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if p != col {
            for j in 0..n {
                left.data.swap(p * n + j, col * n + j);
                right.data.swap(p * n + j, col * n + j);
            }
        }
        let inv = left[(col, col)].inv()?;
        for j in 0..n {
            left[(col, j)] *= &inv;
            right[(col, j)] *= &inv;
        }
        for r in 0..n {
            if r == col || left[(r, col)].is_zero() {
                continue;
            }
            let factor = left[(r, col)].clone();
            for j in 0..n {
                let lv = left[(col, j)].clone();
                if !lv.is_zero() {
                    left[(r, j)] -= &(factor.clone() * &lv);
                }
                let rv = right[(col, j)].clone();
                if !rv.is_zero() {
                    right[(r, j)] -= &(factor.clone() * &rv);
                }
            }
        }
    }
    Ok(right)
}

/// Congruence diagonalization `Q = Sᵀ Λ S` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceDiagonalization<F> {
    pub s: Matrix<F>,
    pub s_inv: Matrix<F>,
    /// Diagonal of `Λ`.
    pub lambda: Vec<F>,
}

/// Lagrange's symmetric elimination.
///
/// Builds an invertible `T` with `T Q Tᵀ = Λ` by paired row/column
/// operations, then `S = T⁻ᵀ` and `S⁻¹ = Tᵀ`. A zero pivot is repaired by
/// swapping in a later nonzero diagonal entry, or, when the remaining
/// diagonal is all zero, by adding row/column `j` into the pivot (the new
/// pivot is `2 Q_kj ≠ 0`).
pub fn lagrange_diagonalize<F: OrderedField>(q: &Matrix<F>) -> Result<CongruenceDiagonalization<F>> {
    if !q.is_square() {
        return Err(dim_mismatch("diagonalization of a non-square matrix"));
    }
    if !q.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let n = q.rows();
    let mut w = q.clone();
    let mut t = Matrix::identity(n);

    let swap = |m: &mut Matrix<F>, i: usize, j: usize, both: bool| {
        let c = m.cols;
        for k in 0..c {
            m.data.swap(i * c + k, j * c + k);
        }
        if both {
            let r = m.rows;
            for k in 0..r {
                m.data.swap(k * c + i, k * c + j);
            }
        }
    };

    for k in 0..n {
        if w[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !w[(j, j)].is_zero()) {
                swap(&mut w, k, j, true);
                swap(&mut t, k, j, false);
            } else if let Some(j) = (k + 1..n).find(|&j| !w[(k, j)].is_zero()) {
                // Row k += row j, then column k += column j.
                for c in 0..n {
                    let v = w[(j, c)].clone();
                    w[(k, c)] += &v;
                    let tv = t[(j, c)].clone();
                    t[(k, c)] += &tv;
                }
                for r in 0..n {
                    let v = w[(r, j)].clone();
                    w[(r, k)] += &v;
                }
            } else {
                continue;
            }
        }
        let pivot_inv = w[(k, k)].inv()?;
        for j in k + 1..n {
            if w[(j, k)].is_zero() {
                continue;
            }
            let factor = w[(j, k)].clone() * &pivot_inv;
            // Row j -= factor * row k.
            for c in 0..n {
                let v = w[(k, c)].clone();
                if !v.is_zero() {
                    w[(j, c)] -= &(factor.clone() * &v);
                }
                let tv = t[(k, c)].clone();
                if !tv.is_zero() {
                    t[(j, c)] -= &(factor.clone() * &tv);
                }
            }
            // Column j -= factor * column k.
            for r in 0..n {
                let v = w[(r, k)].clone();
                if !v.is_zero() {
                    w[(r, j)] -= &(factor.clone() * &v);
                }
            }
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || w[(i, j)].is_zero())));

    let lambda = (0..n).map(|i| w[(i, i)].clone()).collect();
    let s_inv = t.transpose();
    let s = invert(&s_inv)?;
    Ok(CongruenceDiagonalization { s, s_inv, lambda })
}
