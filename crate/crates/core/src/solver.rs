//! Exact recursive minimization of a quadratic function over a polyhedron.
//!
//! The procedure returns exactly one of Infeasible, Unbounded (with a ray
//! certificate) or Optimal (with an exact minimizer):
//!
//! 0. drop zero rows, or stop on a row `0 ≤ β` with `β < 0`;
//! 1. in dimension one, solve the interval problem directly;
//! 2. move to coordinates `y = S(x − v)` where `f = yᵀΛy + uᵀy + γ′` and
//!    `u` has at most one nonzero entry;
//! 3. if `Λ ⪰ 0`, `u = 0` and `y = 0` is feasible, the shifted origin is
//!    optimal;
//! 4. otherwise, for every orthant `h` and every row `k` of `P ∩ orthant(h)`,
//!    recurse on the formal facet `aₖᵀy = bₖ` in one dimension less,
//!    returning at once on Unbounded;
//! 5. pick the best facet candidate, or report Infeasible if none exists.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{dim_mismatch, Result};
use crate::field::OrderedField;
use crate::poly::{
    hyperplane_parameterize, orthant_restrict, preprocess_zero_rows, substitute_into_polyhedron,
    OrthantSign, Polyhedron,
};
use crate::quadform::{align_linear_term, change_coordinates, decouple, substitute_into_function, QuadraticFunction};

/// Decision of the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Infeasible,
    Unbounded,
    Optimal,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Infeasible => "Infeasible",
            Status::Unbounded => "Unbounded",
            Status::Optimal => "Optimal",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Optimal value in the extended line: `+∞` for Infeasible, `−∞` for Unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<F> {
    NegInfinity,
    Finite(F),
    PosInfinity,
}

/// A feasible ray `x₀ + t d`, `t ≥ 0`, along which `f` decreases without bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RayCertificate<F> {
    pub x0: Vec<F>,
    pub d: Vec<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<F> {
    Infeasible,
    Unbounded(RayCertificate<F>),
    Optimal { value: F, point: Vec<F> },
}

impl<F: OrderedField> Outcome<F> {
    pub fn status(&self) -> Status {
        match self {
            Outcome::Infeasible => Status::Infeasible,
            Outcome::Unbounded(_) => Status::Unbounded,
            Outcome::Optimal { .. } => Status::Optimal,
        }
    }

    pub fn value(&self) -> Value<F> {
        match self {
            Outcome::Infeasible => Value::PosInfinity,
            Outcome::Unbounded(_) => Value::NegInfinity,
            Outcome::Optimal { value, .. } => Value::Finite(value.clone()),
        }
    }

    pub fn optimal_value(&self) -> Option<&F> {
        match self {
            Outcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[F]> {
        match self {
            Outcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn ray(&self) -> Option<&RayCertificate<F>> {
        match self {
            Outcome::Unbounded(ray) => Some(ray),
            _ => None,
        }
    }
}

type Subproblem<F> = (Polyhedron<F>, QuadraticFunction<F>);

/// Counters collected during one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Number of (sub)problems entered, the top-level call included.
    pub subproblems: u64,
    /// Deepest recursion level reached; the top-level call is level 0.
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<F> {
    pub outcome: Outcome<F>,
    pub stats: SolveStats,
}

impl<F: OrderedField> SolveResult<F> {
    pub fn status(&self) -> Status {
        self.outcome.status()
    }
}

/// Minimizes `f` over `P`.
pub fn min_qp_lof<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>) -> Result<SolveResult<F>> {
    if p.dim() != f.dim() {
        return Err(dim_mismatch(format!(
            "polyhedron in dimension {} but objective in dimension {}",
            p.dim(),
            f.dim()
        )));
    }
    let mut stats = SolveStats::default();
    let outcome = solve_rec(p, f, 0, &mut stats)?;
    Ok(SolveResult { outcome, stats })
}

fn solve_rec<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    depth: usize,
    stats: &mut SolveStats,
) -> Result<Outcome<F>> {
    stats.subproblems += 1;
    stats.max_depth = stats.max_depth.max(depth);

    // Zero rows.
    let Ok(p) = preprocess_zero_rows(p) else {
        return Ok(Outcome::Infeasible);
    };
    let n = p.dim();
    if n == 0 {
        // Every row was a satisfied zero row.
        return Ok(Outcome::Optimal {
            value: f.gamma().clone(),
            point: Vec::new(),
        });
    }

    // One variable.
    if n == 1 {
        return solve_univariate(&p, f);
    }

    // Decouple and move to y-coordinates.
    let form = align_linear_term(&decouple(f)?)?;
    let (p_y, f_y) = change_coordinates(&p, &form)?;

    // Unconstrained minimum at the y-origin.
    if let Some(Outcome::Optimal { value, point }) = global_check(&form.lambda, &form.u, &form.gamma, p_y.b()) {
        return Ok(Outcome::Optimal {
            value,
            point: form.to_x(&point)?,
        });
    }

    // Facets of every orthant restriction.
    let mut best: Option<(F, Vec<F>)> = None;
    // Orthants that differ only in sign i produce the same facet y_i = 0;
    // identical sibling subproblems are solved once.
    let mut solved: HashMap<Subproblem<F>, (Outcome<F>, SolveStats)> = HashMap::new();
    for h in OrthantSign::all(n) {
        let p_h = orthant_restrict(&p_y, &h)?;
        for k in 0..p_h.num_rows() {
            let (row, beta) = p_h.row(k);
            let map = hyperplane_parameterize(row, beta)?;
            let sub_p = substitute_into_polyhedron(&p_h, &map, k)?;
            let sub_f = substitute_into_function(&f_y, &map)?;
            let key = (sub_p, sub_f);
            let outcome = match solved.get(&key) {
                Some((outcome, sub_stats)) => {
                    stats.subproblems += sub_stats.subproblems;
                    outcome.clone()
                }
                None => {
                    let mut sub_stats = SolveStats::default();
                    let outcome = solve_rec(&key.0, &key.1, depth + 1, &mut sub_stats)?;
                    stats.subproblems += sub_stats.subproblems;
                    stats.max_depth = stats.max_depth.max(sub_stats.max_depth);
                    solved.insert(key, (outcome.clone(), sub_stats));
                    outcome
                }
            };
            match outcome {
                Outcome::Infeasible => {}
                Outcome::Unbounded(ray) => {
                    let y0 = map.apply(&ray.x0)?;
                    let dy = map.apply_linear(&ray.d)?;
                    return Ok(Outcome::Unbounded(RayCertificate {
                        x0: form.to_x(&y0)?,
                        d: form.to_x_direction(&dy)?,
                    }));
                }
                Outcome::Optimal { value, point } => {
                    let x = form.to_x(&map.apply(&point)?)?;
                    let better = match &best {
                        None => true,
                        Some((bv, bx)) => match value.cmp(bv) {
                            Ordering::Less => true,
                            Ordering::Equal => x < *bx,
                            Ordering::Greater => false,
                        },
                    };
                    if better {
                        best = Some((value, x));
                    }
                }
            }
        }
    }

    Ok(match best {
        None => Outcome::Infeasible,
        Some((value, point)) => Outcome::Optimal { value, point },
    })
}

/// Shortcut when the unconstrained minimizer `y = 0` is feasible.
///
/// Returns `Optimal(γ′)` at `y = 0` (in `y` coordinates), or `None` when
/// the shortcut does not apply.
pub fn global_check<F: OrderedField>(lambda: &[F], u: &[F], gamma: &F, b_y: &[F]) -> Option<Outcome<F>> {
    let convex = lambda.iter().all(|l| !l.is_negative());
    let no_linear = u.iter().all(F::is_zero);
    let origin_feasible = b_y.iter().all(|b| !b.is_negative());
    (convex && no_linear && origin_feasible).then(|| Outcome::Optimal {
        value: gamma.clone(),
        point: vec![F::zero(); lambda.len()],
    })
}

/// One-dimensional problem `min a x² + b x + γ` over an interval `[L, U]`
/// (either end possibly absent).
pub fn solve_univariate<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>) -> Result<Outcome<F>> {
    if p.dim() != 1 || f.dim() != 1 {
        return Err(dim_mismatch("univariate solve needs dimension one"));
    }
    let mut lower: Option<F> = None;
    let mut upper: Option<F> = None;
    for (row, bi) in p.a().row_iter().zip(p.b()) {
        let ai = &row[0];
        if ai.is_zero() {
            if bi.is_negative() {
                return Ok(Outcome::Infeasible);
            }
            continue;
        }
        let bound = bi.checked_div(ai)?;
        if ai.is_negative() {
            if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l > u {
            return Ok(Outcome::Infeasible);
        }
    }

    let a = f.q()[(0, 0)].clone();
    let b = f.c()[0].clone();
    let at = |x: F| -> Result<Outcome<F>> {
        let value = f.evaluate(std::slice::from_ref(&x))?;
        Ok(Outcome::Optimal { value, point: vec![x] })
    };
    let ray = |x0: F, dir: i64| {
        Outcome::Unbounded(RayCertificate {
            x0: vec![x0],
            d: vec![F::from_i64(dir)],
        })
    };

    if a.is_positive() {
        let vertex = -(b.checked_div(&(a * F::from_i64(2)))?);
        let clamped = match (&lower, &upper) {
            (Some(l), _) if vertex < *l => l.clone(),
            (_, Some(u)) if vertex > *u => u.clone(),
            _ => vertex,
        };
        return at(clamped);
    }

    if a.is_negative() {
        return match (lower, upper) {
            (Some(l), Some(u)) => {
                let fl = f.evaluate(std::slice::from_ref(&l))?;
                let fu = f.evaluate(std::slice::from_ref(&u))?;
                if fu < fl {
                    Ok(Outcome::Optimal { value: fu, point: vec![u] })
                } else {
                    Ok(Outcome::Optimal { value: fl, point: vec![l] })
                }
            }
            (Some(l), None) => Ok(ray(l, 1)),
            (None, Some(u)) => Ok(ray(u, -1)),
            (None, None) => Ok(ray(F::zero(), 1)),
        };
    }

    if b.is_positive() {
        return match lower {
            Some(l) => at(l),
            None => Ok(ray(upper.unwrap_or_else(F::zero), -1)),
        };
    }
    if b.is_negative() {
        return match upper {
            Some(u) => at(u),
            None => Ok(ray(lower.unwrap_or_else(F::zero), 1)),
        };
    }
    at(lower.or(upper).unwrap_or_else(F::zero))
}

/// Checks a ray certificate: `A x₀ ≤ b`, `A d ≤ 0`, and `φ(t) = f(x₀ + t d)`
/// has a negative leading coefficient (quadratic, or linear when the
/// quadratic one vanishes).
pub fn verify_ray<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>, cert: &RayCertificate<F>) -> bool {
    if cert.x0.len() != p.dim() || cert.d.len() != p.dim() || f.dim() != p.dim() {
        return false;
    }
    if !p.contains(&cert.x0) || !p.is_recession_direction(&cert.d) {
        return false;
    }
    let Ok((alpha, beta, _)) = f.along_ray(&cert.x0, &cert.d) else {
        return false;
    };
    alpha.is_negative() || (alpha.is_zero() && beta.is_negative())
}

/// Local certificate for an Optimal claim: the point is feasible and its
/// objective value equals the claimed value exactly.
pub fn verify_optimal<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>, value: &F, point: &[F]) -> bool {
    p.contains(point) && f.dim() == point.len() && f.evaluate(point).is_ok_and(|v| v == *value)
}

/// Self-check of a solver outcome: Optimal and Unbounded carry certificates.
pub fn verify_outcome<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>, outcome: &Outcome<F>) -> bool {
    match outcome {
        Outcome::Infeasible => true,
        Outcome::Unbounded(ray) => verify_ray(p, f, ray),
        Outcome::Optimal { value, point } => verify_optimal(p, f, value, point),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Matrix;
    use crate::field::{RatFunc, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn quad(qm: &[&[i64]], c: &[i64], gamma: i64) -> QuadraticFunction<Rational> {
        QuadraticFunction::new(Matrix::from_i64(qm).unwrap(), qs(c), q(gamma)).unwrap()
    }

    fn poly(n: usize, rows: &[(&[i64], i64)]) -> Polyhedron<Rational> {
        Polyhedron::from_i64(n, rows).unwrap()
    }

    #[test]
    fn univariate_interior_vertex() {
        let p = preprocess_zero_rows(&poly(1, &[(&[-1], 0), (&[1], 3)])).unwrap();
        let out = solve_univariate(&p, &quad(&[&[1]], &[-2], 0)).unwrap();
        assert_eq!(out, Outcome::Optimal { value: q(-1), point: qs(&[1]) });
    }

    #[test]
    fn univariate_concave_ray() {
        let p = poly(1, &[(&[-1], 0)]);
        let out = solve_univariate(&p, &quad(&[&[-1]], &[0], 0)).unwrap();
        assert_eq!(out, Outcome::Unbounded(RayCertificate { x0: qs(&[0]), d: qs(&[1]) }));
    }

    #[test]
    fn univariate_empty_interval() {
        let p = poly(1, &[(&[1], -1), (&[-1], -1)]);
        assert_eq!(solve_univariate(&p, &quad(&[&[0]], &[0], 0)).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn univariate_increasing_linear() {
        let p = poly(1, &[(&[-1], -5)]);
        let out = solve_univariate(&p, &quad(&[&[0]], &[2], 1)).unwrap();
        assert_eq!(out, Outcome::Optimal { value: q(11), point: qs(&[5]) });
    }

    #[test]
    fn univariate_concave_picks_lower_endpoint() {
        // f = -x^2 on [-1, 1]: both ends give -1; the lower end is kept.
        let p = poly(1, &[(&[1], 1), (&[-1], 1)]);
        let out = solve_univariate(&p, &quad(&[&[-1]], &[0], 0)).unwrap();
        assert_eq!(out, Outcome::Optimal { value: q(-1), point: qs(&[-1]) });
    }

    #[test]
    fn univariate_constant_prefers_lower_bound() {
        let p = poly(1, &[(&[1], 4), (&[-2], -2)]);
        let out = solve_univariate(&p, &quad(&[&[0]], &[0], 3)).unwrap();
        assert_eq!(out, Outcome::Optimal { value: q(3), point: qs(&[1]) });
        let out = solve_univariate(&poly(1, &[]), &quad(&[&[0]], &[0], 3)).unwrap();
        assert_eq!(out, Outcome::Optimal { value: q(3), point: qs(&[0]) });
    }

    #[test]
    fn global_check_cases() {
        let g = q(7);
        assert_eq!(
            global_check(&qs(&[1, 1]), &qs(&[0, 0]), &g, &qs(&[3, 2])),
            Some(Outcome::Optimal { value: q(7), point: qs(&[0, 0]) })
        );
        assert!(global_check(&qs(&[1, -1]), &qs(&[0, 0]), &g, &qs(&[3, 2])).is_none());
        assert!(global_check(&qs(&[1, 0]), &qs(&[0, 1]), &g, &qs(&[3, 2])).is_none());
        assert!(global_check(&qs(&[1, 1]), &qs(&[0, 0]), &g, &qs(&[-1])).is_none());
    }

    #[test]
    fn sphere_over_halfplane() {
        let p = poly(2, &[(&[-1, -1], -2)]);
        let f = quad(&[&[1, 0], &[0, 1]], &[0, 0], 0);
        let res = min_qp_lof(&p, &f).unwrap();
        assert_eq!(res.outcome, Outcome::Optimal { value: q(2), point: qs(&[1, 1]) });
        assert!(verify_outcome(&p, &f, &res.outcome));
    }

    #[test]
    fn saddle_over_box_ties_lexicographically() {
        let p = poly(2, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]);
        let f = quad(&[&[1, 0], &[0, -1]], &[0, 0], 0);
        let res = min_qp_lof(&p, &f).unwrap();
        assert_eq!(res.outcome, Outcome::Optimal { value: q(-1), point: qs(&[0, -1]) });
    }

    #[test]
    fn bilinear_is_unbounded() {
        let p = poly(2, &[(&[-1, 0], -1)]);
        let f = quad(&[&[0, 1], &[1, 0]], &[0, 0], 0);
        let res = min_qp_lof(&p, &f).unwrap();
        let ray = res.outcome.ray().expect("unbounded");
        assert!(verify_ray(&p, &f, ray));
        let given = RayCertificate { x0: qs(&[1, 0]), d: qs(&[0, -1]) };
        assert!(verify_ray(&p, &f, &given));
    }

    #[test]
    fn infinitesimal_curvature_attains_minimum() {
        let e = RatFunc::epsilon();
        let f = QuadraticFunction::new(Matrix::diagonal(std::slice::from_ref(&e)), vec![RatFunc::from_i64(-1)], RatFunc::zero())
            .unwrap();
        let res = min_qp_lof(&Polyhedron::whole_space(1), &f).unwrap();
        let value = RatFunc::parse_literal("(-1)/(4*e)").unwrap();
        let point = RatFunc::parse_literal("(1)/(2*e)").unwrap();
        assert_eq!(res.outcome, Outcome::Optimal { value, point: vec![point] });
    }

    #[test]
    fn conflicting_zero_row_is_infeasible() {
        let p = poly(2, &[(&[0, 0], -1)]);
        let res = min_qp_lof(&p, &QuadraticFunction::constant(2, q(0))).unwrap();
        assert_eq!(res.outcome, Outcome::Infeasible);
    }

    #[test]
    fn zero_dimensional_input() {
        let f = QuadraticFunction::constant(0, q(5));
        let res = min_qp_lof(&Polyhedron::from_i64(0, &[(&[], 1)]).unwrap(), &f).unwrap();
        assert_eq!(res.outcome, Outcome::Optimal { value: q(5), point: vec![] });
        let res = min_qp_lof(&Polyhedron::from_i64(0, &[(&[], -1)]).unwrap(), &f).unwrap();
        assert_eq!(res.outcome, Outcome::Infeasible);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let f = QuadraticFunction::constant(3, q(0));
        assert!(min_qp_lof(&Polyhedron::whole_space(2), &f).is_err());
    }

    #[test]
    fn verify_ray_rejections() {
        let p = poly(2, &[(&[-1, 0], -1)]);
        let f = quad(&[&[0, 1], &[1, 0]], &[0, 0], 0);
        let bad_dir = RayCertificate { x0: qs(&[1, 0]), d: qs(&[-1, 0]) };
        assert!(!verify_ray(&p, &f, &bad_dir));
        let flat = RayCertificate { x0: qs(&[1, 0]), d: qs(&[1, 0]) };
        assert_eq!(f.along_ray(&flat.x0, &flat.d).unwrap().0, q(0));
        assert_eq!(f.along_ray(&flat.x0, &flat.d).unwrap().1, q(0));
        assert!(!verify_ray(&p, &f, &flat));
        let infeasible_base = RayCertificate { x0: qs(&[0, 0]), d: qs(&[0, -1]) };
        assert!(!verify_ray(&p, &f, &infeasible_base));
    }

    #[test]
    fn verify_optimal_rejections() {
        let p = poly(2, &[(&[-1, -1], -2)]);
        let f = quad(&[&[1, 0], &[0, 1]], &[0, 0], 0);
        assert!(verify_optimal(&p, &f, &q(2), &qs(&[1, 1])));
        assert!(!verify_optimal(&p, &f, &q(0), &qs(&[0, 0])));
        assert!(!verify_optimal(&p, &f, &q(3), &qs(&[1, 1])));
    }

    #[test]
    fn depth_bounded_by_dimension() {
        let p = poly(3, &[(&[1, 1, 1], 1), (&[-1, 0, 0], 2)]);
        let f = quad(&[&[1, 2, 0], &[2, -1, 0], &[0, 0, 1]], &[1, 0, -1], 0);
        let res = min_qp_lof(&p, &f).unwrap();
        assert!(res.stats.max_depth <= 3);
        assert!(verify_outcome(&p, &f, &res.outcome));
    }
}
