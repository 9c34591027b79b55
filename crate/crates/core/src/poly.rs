//! Polyhedra `{x : A x ≤ b}` and the geometric moves of the recursive solver.

use crate::error::{dim_mismatch, Error, Result};
use crate::exactla::{dot, Matrix};
use crate::field::OrderedField;
use crate::quadform::QuadraticFunction;
use crate::solver::{min_qp_lof, Outcome};

/// System `A x ≤ b`.
///
/// A *raw* system may contain zero rows; [`preprocess_zero_rows`] removes
/// them (or detects `0 ≤ β` with `β < 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyhedron<F> {
    a: Matrix<F>,
    b: Vec<F>,
    raw: bool,
}

impl<F: OrderedField> Polyhedron<F> {
    /// A raw system; zero rows are allowed until preprocessing.
    pub fn new(a: Matrix<F>, b: Vec<F>) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(dim_mismatch(format!(
                "A has {} rows but b has {} entries",
                a.rows(),
                b.len()
            )));
        }
        Ok(Polyhedron { a, b, raw: true })
    }

    /// The whole space `𝔽ⁿ` (no constraints).
    pub fn whole_space(n: usize) -> Self {
        Polyhedron {
            a: Matrix::zeros(0, n),
            b: Vec::new(),
            raw: false,
        }
    }

    /// Convenience constructor from integer rows `(a, b)`.
    pub fn from_i64(n: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        let a = Matrix::from_rows_with_cols(
            rows.iter()
                .map(|(r, _)| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
            n,
        )?;
        let b = rows.iter().map(|&(_, v)| F::from_i64(v)).collect();
        Self::new(a, b)
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &[F] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn row(&self, i: usize) -> (&[F], &F) {
        (self.a.row(i), &self.b[i])
    }

    pub fn contains(&self, x: &[F]) -> bool {
        x.len() == self.dim() && self.a.row_iter().zip(&self.b).all(|(r, bi)| dot(r, x) <= *bi)
    }

    /// `A d ≤ 0`.
    pub fn is_recession_direction(&self, d: &[F]) -> bool {
        d.len() == self.dim() && self.a.row_iter().all(|r| !dot(r, d).is_positive())
    }

    /// Appends the row `aᵀx ≤ β`.
    pub fn with_row(&self, a: &[F], beta: F) -> Result<Self> {
        let extra = Matrix::from_rows_with_cols(vec![a.to_vec()], self.dim())?;
        let mut b = self.b.clone();
        b.push(beta);
        Ok(Polyhedron {
            a: self.a.vstack(&extra)?,
            b,
            raw: self.raw || a.iter().all(F::is_zero),
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Polyhedron {
            a: self.a.select_rows(indices),
            b: indices.iter().map(|&i| self.b[i].clone()).collect(),
            raw: self.raw,
        }
    }

    pub fn into_parts(self) -> (Matrix<F>, Vec<F>) {
        (self.a, self.b)
    }
}

/// Emitted by preprocessing when some row reads `0 ≤ β` with `β < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfeasibleSignal {
    pub row: usize,
}

/// Drops trivially true zero rows; reports a conflicting zero row.
pub fn preprocess_zero_rows<F: OrderedField>(
    p: &Polyhedron<F>,
) -> std::result::Result<Polyhedron<F>, InfeasibleSignal> {
    let mut keep = Vec::with_capacity(p.num_rows());
    for (i, (row, bi)) in p.a.row_iter().zip(&p.b).enumerate() {
        if row.iter().all(F::is_zero) {
            if bi.is_negative() {
                return Err(InfeasibleSignal { row: i });
            }
        } else {
            keep.push(i);
        }
    }
    let mut out = if keep.len() == p.num_rows() {
        p.clone()
    } else {
        p.select_rows(&keep)
    };
    out.raw = false;
    Ok(out)
}

/// Sign pattern `h ∈ {−1, +1}ⁿ` selecting an orthant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthantSign(Vec<i8>);

impl OrthantSign {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpec("orthant signs must be ±1".into()));
        }
        Ok(OrthantSign(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// All `2ⁿ` patterns in lexicographic order, `−1` before `+1`.
    pub fn all(n: usize) -> impl Iterator<Item = OrthantSign> {
        assert!(n < usize::BITS as usize, "too many orthants");
        (0..1usize << n).map(move |mask| {
            OrthantSign(
                (0..n)
                    .map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
                    .collect(),
            )
        })
    }
}

/// `P^h`: appends the rows `hᵢ yᵢ ≤ 0`.
pub fn orthant_restrict<F: OrderedField>(p: &Polyhedron<F>, h: &OrthantSign) -> Result<Polyhedron<F>> {
    let n = p.dim();
    if h.0.len() != n {
        return Err(dim_mismatch(format!(
            "orthant sign of length {} for dimension {n}",
            h.0.len()
        )));
    }
    let signs: Vec<F> = h.0.iter().map(|&s| F::from_i64(s.into())).collect();
    let mut b = p.b.clone();
    b.extend(std::iter::repeat_n(F::zero(), n));
    Ok(Polyhedron {
        a: p.a.vstack(&Matrix::diagonal(&signs))?,
        b,
        raw: p.raw,
    })
}

/// Affine map `z ↦ M z + p` from `𝔽ᵏ` into `𝔽ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap<F> {
    pub m: Matrix<F>,
    pub p: Vec<F>,
}

impl<F: OrderedField> AffineMap<F> {
    pub fn new(m: Matrix<F>, p: Vec<F>) -> Result<Self> {
        if m.rows() != p.len() {
            return Err(dim_mismatch("affine map offset length"));
        }
        Ok(AffineMap { m, p })
    }

    pub fn apply(&self, z: &[F]) -> Result<Vec<F>> {
        let mut y = self.m.mul_vec(z)?;
        for (yi, pi) in y.iter_mut().zip(&self.p) {
            *yi += pi;
        }
        Ok(y)
    }

    /// Image of a direction (linear part only).
    pub fn apply_linear(&self, dz: &[F]) -> Result<Vec<F>> {
        self.m.mul_vec(dz)
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &AffineMap<F>) -> Result<AffineMap<F>> {
        Ok(AffineMap {
            m: self.m.mul(&inner.m)?,
            p: self.apply(&inner.p)?,
        })
    }
}

/// Parameterizes `{y : aᵀy = β}` as `y = M z + p`.
///
/// With `j` the first index where `aⱼ ≠ 0`: `p = (β/aⱼ) eⱼ`, and the columns
/// of `M` are `eᵢ − (aᵢ/aⱼ) eⱼ` for `i ≠ j` in increasing order.
pub fn hyperplane_parameterize<F: OrderedField>(a: &[F], beta: &F) -> Result<AffineMap<F>> {
    let n = a.len();
    let j = a.iter().position(|v| !v.is_zero()).ok_or(Error::ZeroNormalVector)?;
    let aj_inv = a[j].inv()?;
    let mut p = vec![F::zero(); n];
    p[j] = beta.clone() * &aj_inv;
    let mut m = Matrix::zeros(n, n.saturating_sub(1));
    for (col, i) in (0..n).filter(|&i| i != j).enumerate() {
        m[(i, col)] = F::one();
        if !a[i].is_zero() {
            m[(j, col)] = -(a[i].clone() * &aj_inv);
        }
    }
    Ok(AffineMap { m, p })
}

/// Restricts `P` to the hyperplane of row `drop_row` via `y = M z + p`.
///
/// Returns the raw system `(A M, b − A p)` without the defining row.
pub fn substitute_into_polyhedron<F: OrderedField>(
    p: &Polyhedron<F>,
    map: &AffineMap<F>,
    drop_row: usize,
) -> Result<Polyhedron<F>> {
    if drop_row >= p.num_rows() {
        return Err(Error::IndexOutOfRange {
            index: drop_row,
            rows: p.num_rows(),
        });
    }
    if map.m.rows() != p.dim() {
        return Err(dim_mismatch("affine map does not match polyhedron dimension"));
    }
    let k = map.m.cols();
    let mut rows = Vec::with_capacity(p.num_rows() - 1);
    let mut b = Vec::with_capacity(p.num_rows() - 1);
    for (i, (row, bi)) in p.a.row_iter().zip(&p.b).enumerate() {
        if i == drop_row {
            continue;
        }
        let mut new_row = vec![F::zero(); k];
        for (t, at) in row.iter().enumerate() {
            if at.is_zero() {
                continue;
            }
            for (c, nr) in new_row.iter_mut().enumerate() {
                let mv = &map.m[(t, c)];
                if !mv.is_zero() {
                    *nr += &(at.clone() * mv);
                }
            }
        }
        rows.push(new_row);
        b.push(bi.clone() - &dot(row, &map.p));
    }
    Ok(Polyhedron {
        a: Matrix::from_rows_with_cols(rows, k)?,
        b,
        raw: true,
    })
}

/// Indices `i` with `aᵢᵀx = bᵢ` on all of `P`, found by minimizing each
/// `aᵢᵀx` with the exact solver.
pub fn detect_implicit_equalities<F: OrderedField>(p: &Polyhedron<F>) -> Result<Vec<usize>> {
    let mut found = Vec::new();
    for i in 0..p.num_rows() {
        let (row, bi) = p.row(i);
        let f = QuadraticFunction::linear(row.to_vec(), F::zero())?;
        match min_qp_lof(p, &f)?.outcome {
            Outcome::Infeasible => return Err(Error::EmptyPolyhedron),
            Outcome::Optimal { value, .. } if value == *bi => found.push(i),
            _ => {}
        }
    }
    Ok(found)
}
