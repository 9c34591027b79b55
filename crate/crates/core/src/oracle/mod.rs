//! Independent verification machinery.
//!
//! Nothing here calls the recursive solver: feasibility comes from
//! Fourier–Motzkin elimination, optimal values from face-stationary
//! candidate enumeration, and unboundedness of linear and convex objectives
//! from recession-cone generators. These routines are exponential and meant
//! for desk-scale instances only; see [`ScaleLimits`].

mod candidates;
mod cone;
mod falsify;
mod fm;
mod generate;
mod status;

pub use candidates::{candidate_enumerate, Candidate, CandidateSet};
pub use cone::{minimal_face_points, recession_generators, ConeGenerators};
pub use falsify::{falsify_by_sampling, Falsification};
pub use fm::fm_feasible;
pub use generate::{generate_instance, InstanceSpec, Shape};
pub use status::{convex_status_oracle, lp_status_oracle};

use crate::error::{Error, Result};
use crate::poly::Polyhedron;

/// Environment variable overriding [`ScaleLimits`] as `"<max_dim>,<max_rows>"`.
pub const SCALE_LIMIT_ENV: &str = "QPLOF_SCALE_LIMIT";

/// Bounds beyond which the oracles refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleLimits {
    pub max_dim: usize,
    pub max_rows: usize,
    /// Cap on intermediate Fourier–Motzkin system size.
    pub max_fm_rows: usize,
}

impl Default for ScaleLimits {
    fn default() -> Self {
        ScaleLimits {
            max_dim: 5,
            max_rows: 10,
            max_fm_rows: 200_000,
        }
    }
}

impl ScaleLimits {
    /// Defaults, overridden by `QPLOF_SCALE_LIMIT` when it is set and well formed.
    pub fn from_env() -> Self {
        std::env::var(SCALE_LIMIT_ENV)
            .ok()
            .and_then(|v| Self::parse(&v))
            .unwrap_or_default()
    }

    pub fn parse(value: &str) -> Option<Self> {
        let (n, m) = value.split_once(',')?;
        Some(ScaleLimits {
            max_dim: n.trim().parse().ok()?,
            max_rows: m.trim().parse().ok()?,
            ..Self::default()
        })
    }

    pub fn check<F: crate::field::OrderedField>(&self, p: &Polyhedron<F>) -> Result<()> {
        if p.dim() > self.max_dim || p.num_rows() > self.max_rows {
            return Err(Error::ScaleLimitExceeded(format!(
                "instance has n = {}, m = {}; oracle limits are n <= {}, m <= {}",
                p.dim(),
                p.num_rows(),
                self.max_dim,
                self.max_rows
            )));
        }
        Ok(())
    }
}

/// Every `k`-subset of `0..m` in lexicographic order.
pub(crate) fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
