#![allow(dead_code)]

use proptest::prelude::*;

use qplof::exactla::Matrix;
use qplof::{OrderedField, Polyhedron, QuadraticFunction, RatFunc, Rational};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn eps_poly(coeffs: &[i64]) -> RatFunc {
    let e = RatFunc::epsilon();
    let mut power = RatFunc::one();
    let mut acc = RatFunc::zero();
    for &c in coeffs {
        acc += &(RatFunc::from_i64(c) * &power);
        power *= &e;
    }
    acc
}

/// `p(e)/q(e)` with small integer coefficients and degree at most 2.
pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-5i64..=5, 0..=3),
        prop::collection::vec(-5i64..=5, 1..=3),
    )
        .prop_filter_map("zero denominator", |(p, q)| {
            let den = eps_poly(&q);
            (!den.is_zero()).then(|| eps_poly(&p) * &den.inv().unwrap())
        })
}

pub fn int_vec(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, n)
}

pub fn field_vec<F: OrderedField>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

pub fn symmetric<F: OrderedField>(n: usize, upper: &[i64]) -> Matrix<F> {
    let mut m = Matrix::zeros(n, n);
    let mut it = upper.iter();
    for i in 0..n {
        for j in i..n {
            let v = F::from_i64(*it.next().expect("enough entries"));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// Raw integer data of a problem: `(n, Q upper triangle, c, γ, A rows, b)`.
#[derive(Debug, Clone)]
pub struct RawProblem {
    pub n: usize,
    pub q: Vec<i64>,
    pub c: Vec<i64>,
    pub gamma: i64,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

impl RawProblem {
    pub fn build<F: OrderedField>(&self) -> (Polyhedron<F>, QuadraticFunction<F>) {
        let rows = self.a.iter().map(|r| field_vec(r)).collect();
        let a = Matrix::from_rows_with_cols(rows, self.n).unwrap();
        let p = Polyhedron::new(a, field_vec(&self.b)).unwrap();
        let f = QuadraticFunction::new(symmetric(self.n, &self.q), field_vec(&self.c), F::from_i64(self.gamma))
            .unwrap();
        (p, f)
    }
}

pub fn problem(max_n: usize, max_m: usize, bound: i64) -> impl Strategy<Value = RawProblem> {
    (1..=max_n, 0..=max_m).prop_flat_map(move |(n, m)| {
        (
            int_vec(n * (n + 1) / 2, bound),
            int_vec(n, bound),
            -bound..=bound,
            prop::collection::vec(int_vec(n, bound), m),
            int_vec(m, bound),
        )
            .prop_map(move |(q, c, gamma, a, b)| RawProblem { n, q, c, gamma, a, b })
    })
}
