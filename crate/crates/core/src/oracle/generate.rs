use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::OrderedField;
use crate::poly::Polyhedron;
use crate::quadform::QuadraticFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Generic,
    /// `Q = TᵀΛT` with `Λ ≥ 0`.
    Convex,
    /// `Q = 0`.
    Lp,
    /// Last two rows are `aᵀx ≤ β` and `−aᵀx ≤ −β − 1`.
    Infeasible,
    /// A negative curvature direction that no row constrains, hidden by a
    /// random change of coordinates.
    UnboundedBiased,
}

impl Shape {
    pub const ALL: [Shape; 5] = [
        Shape::Generic,
        Shape::Convex,
        Shape::Lp,
        Shape::Infeasible,
        Shape::UnboundedBiased,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Generic => "generic",
            Shape::Convex => "convex",
            Shape::Lp => "lp",
            Shape::Infeasible => "infeasible",
            Shape::UnboundedBiased => "unbounded-biased",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::ALL
            .into_iter()
            .find(|shape| shape.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown shape {s:?}")))
    }
}

/// Parameters of a random instance. The scalar field is the type parameter
/// of [`generate_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub n: usize,
    pub m: usize,
    /// Coefficients are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    pub shape: Shape,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if self.bound < 1 {
            return Err(Error::InvalidSpec("bound must be at least 1".into()));
        }
        if self.shape == Shape::Infeasible && self.m < 2 {
            return Err(Error::InvalidSpec("the infeasible shape needs m >= 2".into()));
        }
        Ok(())
    }
}

struct Draw {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Draw {
    fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    fn ints(&mut self, k: usize) -> Vec<i64> {
        (0..k).map(|_| self.int()).collect()
    }

    #[allow(clippy::needless_range_loop)]
    fn symmetric(&mut self, n: usize) -> Vec<Vec<i64>> {
        let mut q = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.int();
                q[i][j] = v;
                q[j][i] = v;
            }
        }
        q
    }

    /// Random invertible matrix with entries in `{-1, 0, 1}`.
    fn unimodular_ish(&mut self, n: usize) -> Vec<Vec<i64>> {
        loop {
            let t: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| self.rng.gen_range(-1..=1)).collect())
                .collect();
            let refs: Vec<&[i64]> = t.iter().map(Vec::as_slice).collect();
            let rank = Matrix::<crate::field::Rational>::from_i64(&refs)
                .map(|m| m.rank())
                .unwrap_or(0);
            if rank == n {
                return t;
            }
        }
    }
}

fn to_field<F: OrderedField>(rows: &[Vec<i64>], cols: usize) -> Result<Matrix<F>> {
    Matrix::from_rows_with_cols(
        rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect(),
        cols,
    )
}

fn vec_field<F: OrderedField>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

/// `Tᵀ M T` for integer matrices.
fn congruent(m: &[Vec<i64>], t: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                for l in 0..n {
                    s += t[k][i] * m[k][l] * t[l][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Draws a random instance. Identical specs give identical instances.
pub fn generate_instance<F: OrderedField>(spec: &InstanceSpec) -> Result<(Polyhedron<F>, QuadraticFunction<F>)> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let mut draw = Draw {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        bound: spec.bound,
    };

    let (q, c, gamma, a, b) = match spec.shape {
        Shape::Generic | Shape::Lp | Shape::Infeasible => {
            let q = if spec.shape == Shape::Lp {
                vec![vec![0; n]; n]
            } else {
                draw.symmetric(n)
            };
            let c = draw.ints(n);
            let gamma = draw.int();
            let mut a: Vec<Vec<i64>> = (0..m).map(|_| draw.ints(n)).collect();
            let mut b = draw.ints(m);
            if spec.shape == Shape::Infeasible {
                let row = draw.ints(n);
                let beta = draw.int();
                a[m - 2] = row.clone();
                b[m - 2] = beta;
                a[m - 1] = row.iter().map(|v| -v).collect();
                b[m - 1] = -beta - 1;
            }
            (q, c, gamma, a, b)
        }
        Shape::Convex => {
            let lambda: Vec<i64> = (0..n).map(|_| draw.rng.gen_range(0..=spec.bound)).collect();
            let t = draw.unimodular_ish(n);
            let diag: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { lambda[i] } else { 0 }).collect())
                .collect();
            let q = congruent(&diag, &t);
            let c = draw.ints(n);
            let gamma = draw.int();
            let a = (0..m).map(|_| draw.ints(n)).collect();
            let b = draw.ints(m);
            (q, c, gamma, a, b)
        }
        Shape::UnboundedBiased => {
            // Hidden coordinates z: z_{n-1} is absent from every row and
            // carries negative curvature; z = 0 is feasible.
            let mut hq = draw.symmetric(n);
            hq[n - 1][n - 1] = -draw.rng.gen_range(1..=spec.bound);
            let hc = draw.ints(n);
            let gamma = draw.int();
            let ha: Vec<Vec<i64>> = (0..m)
                .map(|_| {
                    let mut r = draw.ints(n);
                    r[n - 1] = 0;
                    r
                })
                .collect();
            let b = (0..m).map(|_| draw.rng.gen_range(0..=spec.bound)).collect();
            // z = T x.
            let t = draw.unimodular_ish(n);
            let q = congruent(&hq, &t);
            let c = (0..n).map(|j| (0..n).map(|k| hc[k] * t[k][j]).sum()).collect();
            let a = ha
                .iter()
                .map(|r| (0..n).map(|j| (0..n).map(|k| r[k] * t[k][j]).sum()).collect())
                .collect();
            (q, c, gamma, a, b)
        }
    };

    let p = Polyhedron::new(to_field(&a, n)?, vec_field(&b))?;
    let f = QuadraticFunction::new(to_field(&q, n)?, vec_field(&c), F::from_i64(gamma))?;
    Ok((p, f))
}
