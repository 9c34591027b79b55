use std::collections::BTreeSet;

use super::subsets_of_size;
use crate::error::Result;
use crate::exactla::{gaussian_solve, Matrix};
use crate::field::OrderedField;
use crate::poly::Polyhedron;

/// Generators of a polyhedral cone `{d : A d ≤ 0}`: the cone equals
/// `span(lineality) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators<F> {
    pub lineality: Vec<Vec<F>>,
    pub rays: Vec<Vec<F>>,
}

impl<F: OrderedField> ConeGenerators<F> {
    /// Conic generators: `±` each lineality vector, then the extreme rays.
    pub fn all(&self) -> Vec<Vec<F>> {
        let mut out = Vec::with_capacity(2 * self.lineality.len() + self.rays.len());
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|v| -v.clone()).collect());
        }
        out.extend(self.rays.iter().cloned());
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }
}

fn normalize<F: OrderedField>(d: Vec<F>) -> Vec<F> {
    match d.iter().find(|v| !v.is_zero()) {
        None => d,
        Some(lead) => {
            let s = lead.abs().inv().expect("nonzero lead");
            d.into_iter().map(|v| v * &s).collect()
        }
    }
}

/// Generators of `{d : A d ≤ 0}` by basis-subset enumeration.
///
/// The lineality space is `ker A`. Extreme rays of the pointed part
/// `{d ⊥ ker A : A d ≤ 0}` are the one-dimensional solution sets of
/// `A_E d = 0, Lᵀ d = 0` (`|E| = rank A − 1`) that satisfy `A d ≤ 0` in
/// one of their two orientations.
pub fn recession_generators<F: OrderedField>(a: &Matrix<F>) -> Result<ConeGenerators<F>> {
    let n = a.cols();
    let zero_rhs = vec![F::zero(); a.rows()];
    let lineality = gaussian_solve(a, &zero_rhs)?.nullspace;
    let rank = n - lineality.len();
    if rank == 0 {
        return Ok(ConeGenerators {
            lineality,
            rays: Vec::new(),
        });
    }
    let l_rows = Matrix::from_rows_with_cols(lineality.clone(), n)?;
    let mut rays = BTreeSet::new();
    for subset in subsets_of_size(a.rows(), rank - 1) {
        let system = a.select_rows(&subset).vstack(&l_rows)?;
        let sol = gaussian_solve(&system, &vec![F::zero(); system.rows()])?;
        if sol.nullspace.len() != 1 {
            continue;
        }
        let g = sol.nullspace.into_iter().next().expect("one basis vector");
        let ag = a.mul_vec(&g)?;
        if ag.iter().all(|v| !v.is_positive()) {
            rays.insert(normalize(g));
        } else if ag.iter().all(|v| !v.is_negative()) {
            rays.insert(normalize(g.into_iter().map(|v| -v).collect()));
        }
    }
    Ok(ConeGenerators {
        lineality,
        rays: rays.into_iter().collect(),
    })
}

/// One point of every minimal face of `P` (the vertices when `P` is
/// pointed), found by solving `A_E x = b_E, Lᵀ x = 0` for every row subset
/// `E` of size `rank A` with a unique solution.
pub fn minimal_face_points<F: OrderedField>(p: &Polyhedron<F>) -> Result<Vec<Vec<F>>> {
    let n = p.dim();
    let a = p.a();
    let lineality = gaussian_solve(a, &vec![F::zero(); a.rows()])?.nullspace;
    let rank = n - lineality.len();
    let l_rows = Matrix::from_rows_with_cols(lineality.clone(), n)?;
    let mut points = BTreeSet::new();
    for subset in subsets_of_size(a.rows(), rank) {
        let system = a.select_rows(&subset).vstack(&l_rows)?;
        let mut rhs: Vec<F> = subset.iter().map(|&i| p.b()[i].clone()).collect();
        rhs.extend(std::iter::repeat_n(F::zero(), lineality.len()));
        let sol = gaussian_solve(&system, &rhs)?;
        if sol.consistent && sol.nullspace.is_empty() && p.contains(&sol.particular) {
            points.insert(sol.particular);
        }
    }
    Ok(points.into_iter().collect())
}
