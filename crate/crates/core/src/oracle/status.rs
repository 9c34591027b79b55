use super::candidates::candidate_enumerate;
use super::cone::recession_generators;
use super::fm::fm_feasible;
use super::ScaleLimits;
use crate::error::{Error, Result};
use crate::exactla::{dot, gaussian_solve, Matrix};
use crate::field::OrderedField;
use crate::poly::Polyhedron;
use crate::quadform::{decouple, QuadraticFunction};
use crate::solver::{Outcome, RayCertificate};

/// Exact status of a linear objective `cᵀx + γ` over `P`.
///
/// Unbounded iff some recession-cone generator `d` has `cᵀd < 0`;
/// otherwise the optimum is the best face candidate.
pub fn lp_status_oracle<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    limits: &ScaleLimits,
) -> Result<Outcome<F>> {
    if !f.is_linear() {
        return Err(Error::InvalidSpec("objective has a quadratic part".into()));
    }
    let Some(x0) = fm_feasible(p, limits)? else {
        return Ok(Outcome::Infeasible);
    };
    let gens = recession_generators(p.a())?;
    for d in gens.all() {
        if dot(f.c(), &d).is_negative() {
            return Ok(Outcome::Unbounded(RayCertificate { x0, d }));
        }
    }
    optimal_from_candidates(p, f, limits)
}

/// Exact status of a convex quadratic over `P`.
///
/// With `Λ ⪰ 0`, `f` is unbounded on a nonempty `P` iff some recession
/// direction `d` has `Qd = 0` and `cᵀd < 0`. Such directions form the cone
/// `N·{w : A N w ≤ 0}` with `N` a basis of `ker Q`, so checking its
/// generators decides the question.
pub fn convex_status_oracle<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    limits: &ScaleLimits,
) -> Result<Outcome<F>> {
    let form = decouple(f)?;
    if form.lambda.iter().any(|l| l.is_negative()) {
        return Err(Error::NotConvex);
    }
    let Some(x0) = fm_feasible(p, limits)? else {
        return Ok(Outcome::Infeasible);
    };
    let n = p.dim();
    let kernel = gaussian_solve(f.q(), &vec![F::zero(); n])?.nullspace;
    if !kernel.is_empty() {
        let a_n = p.a().mul(&kernel_matrix(&kernel, n)?)?;
        for w in recession_generators(&a_n)?.all() {
            let mut d = vec![F::zero(); n];
            for (wi, ni) in w.iter().zip(&kernel) {
                for (dk, nk) in d.iter_mut().zip(ni) {
                    *dk += &(wi.clone() * nk);
                }
            }
            if dot(f.c(), &d).is_negative() {
                return Ok(Outcome::Unbounded(RayCertificate { x0, d }));
            }
        }
    }
    optimal_from_candidates(p, f, limits)
}

fn kernel_matrix<F: OrderedField>(kernel: &[Vec<F>], n: usize) -> Result<Matrix<F>> {
    Matrix::from_columns(n, kernel)
}

fn optimal_from_candidates<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    limits: &ScaleLimits,
) -> Result<Outcome<F>> {
    let set = candidate_enumerate(p, f, limits)?;
    let best = set
        .best()
        .expect("a nonempty polyhedron has a minimal face, hence a candidate when f is bounded");
    Ok(Outcome::Optimal {
        value: best.value.clone(),
        point: best.witness.clone(),
    })
}
