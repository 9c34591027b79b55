//! Verification shared by `solve --check` and `verify`. Nothing here calls
//! the solver.

use qplof::oracle::{
    candidate_enumerate, convex_status_oracle, falsify_by_sampling, fm_feasible, lp_status_oracle, Falsification,
    ScaleLimits,
};
use qplof::quadform::decouple;
use qplof::{Error, OrderedField, Outcome, Polyhedron, QuadraticFunction};

use crate::document::{Check, CheckResult};

pub const FALSIFY_TRIALS: usize = 1000;

fn pass(name: &str) -> Check {
    Check {
        name: name.into(),
        result: CheckResult::Pass,
        detail: None,
    }
}

fn fail(name: &str, detail: String) -> Check {
    Check {
        name: name.into(),
        result: CheckResult::Fail,
        detail: Some(detail),
    }
}

fn skipped(name: &str, detail: String) -> Check {
    Check {
        name: name.into(),
        result: CheckResult::Skipped,
        detail: Some(detail),
    }
}

fn oracle_error(name: &str, e: Error) -> Check {
    match e {
        Error::ScaleLimitExceeded(msg) => skipped(name, msg),
        other => fail(name, other.to_string()),
    }
}

fn render(v: &[impl OrderedField]) -> String {
    let parts: Vec<String> = v.iter().map(OrderedField::render).collect();
    format!("[{}]", parts.join(", "))
}

fn certificate<F: OrderedField>(p: &Polyhedron<F>, f: &QuadraticFunction<F>, outcome: &Outcome<F>) -> Check {
    const NAME: &str = "certificate";
    let n = p.dim();
    match outcome {
        Outcome::Infeasible => skipped(NAME, "infeasibility carries no certificate".into()),
        Outcome::Optimal { value, point } => {
            if point.len() != n {
                return fail(NAME, format!("point has {} coordinates, expected {n}", point.len()));
            }
            if !p.contains(point) {
                return fail(NAME, format!("point infeasible: {}", render(point)));
            }
            match f.evaluate(point) {
                Ok(v) if v == *value => pass(NAME),
                Ok(v) => fail(
                    NAME,
                    format!("value mismatch: f(point) = {}, claimed {}", v.render(), value.render()),
                ),
                Err(e) => fail(NAME, e.to_string()),
            }
        }
        Outcome::Unbounded(ray) => {
            if ray.x0.len() != n || ray.d.len() != n {
                return fail(NAME, format!("ray has wrong dimension, expected {n}"));
            }
            if !p.contains(&ray.x0) {
                return fail(NAME, format!("ray infeasible: x0 = {} violates A x <= b", render(&ray.x0)));
            }
            if !p.is_recession_direction(&ray.d) {
                return fail(NAME, format!("ray infeasible: d = {} violates A d <= 0", render(&ray.d)));
            }
            match f.along_ray(&ray.x0, &ray.d) {
                Ok((a, b, _)) if a.is_negative() || (a.is_zero() && b.is_negative()) => pass(NAME),
                Ok(_) => fail(NAME, "ray not descending: f is bounded below along x0 + t d".into()),
                Err(e) => fail(NAME, e.to_string()),
            }
        }
    }
}

fn same_verdict<F: OrderedField>(name: &str, claimed: &Outcome<F>, oracle: &Outcome<F>) -> Check {
    if claimed.status() != oracle.status() {
        return fail(
            name,
            format!("status mismatch: claimed {}, oracle {}", claimed.status(), oracle.status()),
        );
    }
    match (claimed.optimal_value(), oracle.optimal_value()) {
        (Some(a), Some(b)) if a != b => fail(
            name,
            format!("value mismatch: claimed {}, oracle {}", a.render(), b.render()),
        ),
        _ => pass(name),
    }
}

/// Runs every applicable check on a claimed outcome.
pub fn run_checks<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    outcome: &Outcome<F>,
    seed: u64,
    limits: &ScaleLimits,
) -> Vec<Check> {
    let mut checks = vec![certificate(p, f, outcome)];

    checks.push(match fm_feasible(p, limits) {
        Ok(witness) => {
            let empty = witness.is_none();
            let claimed_empty = matches!(outcome, Outcome::Infeasible);
            if empty == claimed_empty {
                pass("fm_feasible")
            } else if empty {
                fail("fm_feasible", "status mismatch: the polyhedron is empty".into())
            } else {
                fail(
                    "fm_feasible",
                    format!(
                        "status mismatch: feasible point {} exists",
                        render(&witness.expect("nonempty"))
                    ),
                )
            }
        }
        Err(e) => oracle_error("fm_feasible", e),
    });

    if let Outcome::Optimal { value, .. } = outcome {
        checks.push(match candidate_enumerate(p, f, limits) {
            Ok(set) => match set.best() {
                Some(best) if best.value < *value => fail(
                    "candidates",
                    format!(
                        "value mismatch: candidate {} has value {} below claimed {}",
                        render(&best.witness),
                        best.value.render(),
                        value.render()
                    ),
                ),
                Some(best) if best.value != *value => fail(
                    "candidates",
                    format!(
                        "value mismatch: best candidate value {} differs from claimed {}",
                        best.value.render(),
                        value.render()
                    ),
                ),
                Some(_) => pass("candidates"),
                None => fail("candidates", "no feasible face-stationary point".into()),
            },
            Err(e) => oracle_error("candidates", e),
        });
    }

    let convex = match decouple(f) {
        Ok(form) => !form.lambda.iter().any(|l| l.is_negative()),
        Err(_) => false,
    };
    if f.is_linear() {
        checks.push(match lp_status_oracle(p, f, limits) {
            Ok(oracle) => same_verdict("lp_oracle", outcome, &oracle),
            Err(e) => oracle_error("lp_oracle", e),
        });
    } else if convex {
        checks.push(match convex_status_oracle(p, f, limits) {
            Ok(oracle) => same_verdict("convex_oracle", outcome, &oracle),
            Err(e) => oracle_error("convex_oracle", e),
        });
    } else if let Outcome::Optimal { value, .. } = outcome {
        checks.push(match falsify_by_sampling(p, f, value, FALSIFY_TRIALS, seed, limits) {
            Ok(Falsification::Pass) => pass("falsify"),
            Ok(Falsification::Counterexample { point, value: v }) => fail(
                "falsify",
                format!(
                    "value mismatch: sampled point {} has value {} below claimed {}",
                    render(&point),
                    v.render(),
                    value.render()
                ),
            ),
            Err(e) => oracle_error("falsify", e),
        });
    }
    checks
}

pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| c.result == CheckResult::Fail).collect()
}
