use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::candidates::candidate_enumerate;
use super::cone::{minimal_face_points, recession_generators};
use super::fm::fm_feasible;
use super::ScaleLimits;
use crate::error::Result;
use crate::field::OrderedField;
use crate::poly::Polyhedron;
use crate::quadform::QuadraticFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Falsification<F> {
    Pass,
    /// A feasible point whose value is strictly below the claim.
    Counterexample { point: Vec<F>, value: F },
}

impl<F> Falsification<F> {
    pub fn passed(&self) -> bool {
        matches!(self, Falsification::Pass)
    }
}

/// Tries to refute the claim `min_P f = claimed` by sampling feasible
/// points: convex combinations of anchor points (minimal-face points, the
/// Fourier–Motzkin witness and face-stationary candidates) plus nonnegative
/// multiples of recession-cone generators, including multiples up to `2^40`.
///
/// Deterministic for a fixed seed. An empty `P` passes vacuously.
pub fn falsify_by_sampling<F: OrderedField>(
    p: &Polyhedron<F>,
    f: &QuadraticFunction<F>,
    claimed: &F,
    trials: usize,
    seed: u64,
    limits: &ScaleLimits,
) -> Result<Falsification<F>> {
    let Some(witness) = fm_feasible(p, limits)? else {
        return Ok(Falsification::Pass);
    };
    let mut anchors = minimal_face_points(p)?;
    anchors.push(witness);
    anchors.extend(candidate_enumerate(p, f, limits)?.candidates.into_iter().map(|c| c.witness));
    anchors.sort();
    anchors.dedup();
    let generators = recession_generators(p.a())?.all();

    let check = |x: Vec<F>| -> Result<Option<Falsification<F>>> {
        if !p.contains(&x) {
            return Ok(None);
        }
        let value = f.evaluate(&x)?;
        Ok((value < *claimed).then_some(Falsification::Counterexample { point: x, value }))
    };

    for a in &anchors {
        if let Some(c) = check(a.clone())? {
            return Ok(c);
        }
    }

    let n = p.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut x = vec![F::zero(); n];
        if rng.gen_bool(0.25) {
            x.clone_from(&anchors[rng.gen_range(0..anchors.len())]);
        } else {
            let weights: Vec<i64> = anchors.iter().map(|_| rng.gen_range(0..=4)).collect();
            let total: i64 = weights.iter().sum();
            if total > 0 {
                let scale = F::from_i64(total).inv()?;
                for (w, a) in weights.iter().zip(&anchors) {
                    if *w == 0 {
                        continue;
                    }
                    let k = F::from_i64(*w) * &scale;
                    for (xi, ai) in x.iter_mut().zip(a) {
                        *xi += &(k.clone() * ai);
                    }
                }
            } else {
                x.clone_from(&anchors[0]);
            }
        }
        for g in &generators {
            if rng.gen_bool(0.5) {
                continue;
            }
            let t = if rng.gen_bool(0.5) {
                F::from_i64(rng.gen_range(1..=3))
            } else {
                F::from_i64(1i64 << rng.gen_range(0..=40))
            };
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += &(t.clone() * gi);
            }
        }
        if let Some(c) = check(x)? {
            return Ok(c);
        }
    }
    Ok(Falsification::Pass)
}
