use std::cmp::Ordering;

use super::fm::fm_witness;
use super::{subsets_of_size, ScaleLimits};
use crate::error::Result;
use crate::exactla::{dot, gaussian_solve, Matrix};
use crate::field::OrderedField;
use crate::poly::Polyhedron;
use crate::quadform::QuadraticFunction;

/// A feasible face-stationary point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate<F> {
    pub value: F,
    pub witness: Vec<F>,
    /// Rows of `P` held at equality to define the face.
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet<F> {
    pub candidates: Vec<Candidate<F>>,
}

impl<F: OrderedField> CandidateSet<F> {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    /// Smallest value, ties broken by the lexicographically smallest witness.
    pub fn best(&self) -> Option<&Candidate<F>> {
        self.candidates.iter().min_by(|a, b| match a.value.cmp(&b.value) {
            Ordering::Equal => a.witness.cmp(&b.witness),
            o => o,
        })
    }

    pub fn min_value(&self) -> Option<&F> {
        self.best().map(|c| &c.value)
    }
}

/// `x₀ + Σ wᵢ bᵢ`.
fn combine<F: OrderedField>(x0: &[F], basis: &[Vec<F>], w: &[F]) -> Vec<F> {
    let mut x = x0.to_vec();
    for (wi, bi) in w.iter().zip(basis) {
        if wi.is_zero() {
            continue;
        }
        for (xk, bk) in x.iter_mut().zip(bi) {
            *xk += &(wi.clone() * bk);
        }
    }
    x
}

/// Enumerates, for every row subset `E`, the points of `P` that are
/// stationary for `f` restricted to `{A_E x = b_E}`.
///
/// Any attained minimum of `f` over `P` lies in the relative interior of a
/// face and is stationary on that face's affine hull, so the smallest
/// recorded value is the minimum whenever one is attained.
pub fn candidate_enumerate<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    limits: &ScaleLimits,
) -> Result<CandidateSet<F>> {
    limits.check(p)?;
    let n = p.dim();
    let q = f.q();
    let mut out = CandidateSet { candidates: Vec::new() };
    for k in 0..=p.num_rows() {
        for subset in subsets_of_size(p.num_rows(), k) {
            if let Some(c) = face_candidate(p, f, q, n, subset, limits)? {
                out.candidates.push(c);
            }
        }
    }
    Ok(out)
}

fn face_candidate<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    q: &Matrix<F>,
    n: usize,
    subset: Vec<usize>,
    limits: &ScaleLimits,
) -> Result<Option<Candidate<F>>> {
    let a_e = p.a().select_rows(&subset);
    let b_e: Vec<F> = subset.iter().map(|&i| p.b()[i].clone()).collect();
    let face = gaussian_solve(&a_e, &b_e)?;
    if !face.consistent {
        return Ok(None);
    }
    let (x0, basis) = (face.particular, face.nullspace);
    let k = basis.len();

    // f(x₀ + N w) = wᵀ Q̃ w + c̃ᵀ w + const.
    let q_basis: Vec<Vec<F>> = basis.iter().map(|b| q.mul_vec(b)).collect::<Result<_>>()?;
    let mut grad0 = q.mul_vec(&x0)?;
    for (g, ci) in grad0.iter_mut().zip(f.c()) {
        *g = g.clone() + &g.clone() + ci;
    }
    let mut system = Matrix::zeros(k, k);
    let mut rhs = Vec::with_capacity(k);
    for (i, bi) in basis.iter().enumerate() {
        for (j, qj) in q_basis.iter().enumerate() {
            let v = dot(bi, qj);
            system.row_mut(i)[j] = v.clone() + &v;
        }
        rhs.push(-dot(bi, &grad0));
    }
    let stationary = gaussian_solve(&system, &rhs)?;
    if !stationary.consistent {
        return Ok(None);
    }

    // Stationary set: x₁ + span(N K).
    let x1 = combine(&x0, &basis, &stationary.particular);
    let dirs: Vec<Vec<F>> = stationary
        .nullspace
        .iter()
        .map(|kv| combine(&vec![F::zero(); n], &basis, kv))
        .collect();

    let witness = if dirs.is_empty() {
        if !p.contains(&x1) {
            return Ok(None);
        }
        x1
    } else {
        // {z : A (x₁ + D z) ≤ b}
        let rows: Vec<Vec<F>> = p
            .a()
            .row_iter()
            .map(|a| dirs.iter().map(|d| dot(a, d)).collect())
            .collect();
        let ax1 = p.a().mul_vec(&x1)?;
        let rhs: Vec<F> = p.b().iter().zip(ax1).map(|(b, v)| b.clone() - &v).collect();
        let sub = Polyhedron::new(Matrix::from_rows_with_cols(rows, dirs.len())?, rhs)?;
        match fm_witness(&sub, limits.max_fm_rows)? {
            None => return Ok(None),
            Some(z) => combine(&x1, &dirs, &z),
        }
    };
    debug_assert!(p.contains(&witness));
    Ok(Some(Candidate {
        value: f.evaluate(&witness)?,
        witness,
        active: subset,
    }))
}
