use std::collections::BTreeMap;

use super::ScaleLimits;
use crate::error::{Error, Result};
use crate::field::OrderedField;
use crate::poly::Polyhedron;

/// One inequality `aᵀx ≤ b`.
type Row<F> = (Vec<F>, F);

/// Decides `{x : A x ≤ b} ≠ ∅` by Fourier–Motzkin elimination in variable
/// order and returns a witness point when nonempty.
pub fn fm_feasible<F: OrderedField>(p: &Polyhedron<F>, limits: &ScaleLimits) -> Result<Option<Vec<F>>> {
    limits.check(p)?;
    fm_witness(p, limits.max_fm_rows)
}

/// Same as [`fm_feasible`] without the instance-size check (internal callers
/// build systems with extra equality rows).
pub(crate) fn fm_witness<F: OrderedField>(p: &Polyhedron<F>, max_rows: usize) -> Result<Option<Vec<F>>> {
    let n = p.dim();
    let rows: Vec<Row<F>> = p
        .a()
        .row_iter()
        .zip(p.b())
        .map(|(a, b)| (a.to_vec(), b.clone()))
        .collect();

    // stages[j] holds the system in which variables 0..j are eliminated.
    let mut stages: Vec<Vec<Row<F>>> = Vec::with_capacity(n + 1);
    let Some(first) = dedup(rows) else {
        return Ok(None);
    };
    stages.push(first);
    for j in 0..n {
        let current = &stages[j];
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next: Vec<Row<F>> = Vec::new();
        for row in current {
            match row.0[j].signum() {
                crate::field::Sign::Positive => pos.push(row),
                crate::field::Sign::Negative => neg.push(row),
                crate::field::Sign::Zero => next.push(row.clone()),
            }
        }
        if next.len() + pos.len() * neg.len() > max_rows {
            return Err(Error::ScaleLimitExceeded(format!(
                "Fourier-Motzkin system would exceed {max_rows} rows"
            )));
        }
        for (pa, pb) in &pos {
            let sp = pa[j].inv()?;
            for (na, nb) in &neg {
                let sn = (-na[j].clone()).inv()?;
                // pa/pa_j + na/|na_j| has a zero in column j.
                let a: Vec<F> = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| x.clone() * &sp + &(y.clone() * &sn))
                    .collect();
                let b = pb.clone() * &sp + &(nb.clone() * &sn);
                next.push((a, b));
            }
        }
        let Some(next) = dedup(next) else {
            return Ok(None);
        };
        stages.push(next);
    }

    // All variables are gone: the remaining rows read 0 ≤ b.
    if stages[n].iter().any(|(_, b)| b.is_negative()) {
        return Ok(None);
    }

    // Back-substitution, last variable first.
    let mut x = vec![F::zero(); n];
    for j in (0..n).rev() {
        let mut lower: Option<F> = None;
        let mut upper: Option<F> = None;
        for (a, b) in &stages[j] {
            if a[j].is_zero() {
                continue;
            }
            let mut rhs = b.clone();
            for k in j + 1..n {
                if !a[k].is_zero() {
                    rhs -= &(a[k].clone() * &x[k]);
                }
            }
            let bound = rhs.checked_div(&a[j])?;
            if a[j].is_positive() {
                if upper.as_ref().is_none_or(|u| bound < *u) {
                    upper = Some(bound);
                }
            } else if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        }
        let mut v = F::zero();
        if let Some(l) = &lower {
            if v < *l {
                v = l.clone();
            }
        }
        if let Some(u) = &upper {
            if v > *u {
                v = u.clone();
            }
        }
        debug_assert!(lower.as_ref().is_none_or(|l| *l <= v));
        x[j] = v;
    }
    debug_assert!(p.contains(&x));
    Ok(Some(x))
}

/// Scales each row so its first nonzero coefficient has magnitude one and
/// keeps the tightest right-hand side per direction. Returns `None` when a
/// zero row `0 ≤ b` with `b < 0` is found.
fn dedup<F: OrderedField>(rows: Vec<Row<F>>) -> Option<Vec<Row<F>>> {
    let mut best: BTreeMap<Vec<F>, F> = BTreeMap::new();
    for (a, b) in rows {
        let (a, b) = match a.iter().find(|v| !v.is_zero()) {
            None => {
                if b.is_negative() {
                    return None;
                }
                continue;
            }
            Some(lead) => {
                let s = lead.abs().inv().expect("nonzero lead");
                (
                    a.iter().map(|v| v.clone() * &s).collect::<Vec<F>>(),
                    b * &s,
                )
            }
        };
        best.entry(a)
            .and_modify(|cur| {
                if b < *cur {
                    *cur = b.clone();
                }
            })
            .or_insert(b);
    }
    Some(best.into_iter().collect())
}
