//! Quadratic objectives `f(x) = xᵀQx + cᵀx + γ` and their decoupled
//! diagonal form
//!
//! ```text
//! f(x) = (x − v)ᵀ Sᵀ Λ S (x − v) + uᵀ S (x − v) + γ′,   Λ u = 0.
//! ```
//!
//! In the coordinates `y = S(x − v)` the objective reads
//! `yᵀΛy + uᵀy + γ′`: curvature and linear term never share a coordinate.

use crate::error::{dim_mismatch, Result};
use crate::exactla::{dot, invert, lagrange_diagonalize, Matrix};
use crate::field::{half, OrderedField};
use crate::poly::{AffineMap, Polyhedron};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticFunction<F> {
    q: Matrix<F>,
    c: Vec<F>,
    gamma: F,
}

impl<F: OrderedField> QuadraticFunction<F> {
    /// Builds `f`, replacing `Q` by `(Q + Qᵀ)/2`.
    pub fn new(q: Matrix<F>, c: Vec<F>, gamma: F) -> Result<Self> {
        if !q.is_square() || q.rows() != c.len() {
            return Err(dim_mismatch(format!(
                "Q is {}x{} but c has {} entries",
                q.rows(),
                q.cols(),
                c.len()
            )));
        }
        let q = if q.is_symmetric() {
            q
        } else {
            q.add(&q.transpose())?.scale(&half())
        };
        Ok(QuadraticFunction { q, c, gamma })
    }

    pub fn linear(c: Vec<F>, gamma: F) -> Result<Self> {
        let n = c.len();
        Self::new(Matrix::zeros(n, n), c, gamma)
    }

    pub fn constant(n: usize, gamma: F) -> Self {
        QuadraticFunction {
            q: Matrix::zeros(n, n),
            c: vec![F::zero(); n],
            gamma,
        }
    }

    /// `diag(λ)`, `c`, `γ`; always symmetric, so no symmetrization pass.
    pub fn diagonal(lambda: &[F], c: Vec<F>, gamma: F) -> Result<Self> {
        Self::new(Matrix::diagonal(lambda), c, gamma)
    }

    pub fn q(&self) -> &Matrix<F> {
        &self.q
    }

    pub fn c(&self) -> &[F] {
        &self.c
    }

    pub fn gamma(&self) -> &F {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn is_linear(&self) -> bool {
        self.q.is_zero()
    }

    pub fn evaluate(&self, x: &[F]) -> Result<F> {
        let qx = self.q.mul_vec(x)?;
        Ok(dot(x, &qx) + dot(&self.c, x) + &self.gamma)
    }

    /// Coefficients `(α, β, φ₀)` of `φ(t) = f(x₀ + t d) = αt² + βt + φ₀`.
    pub fn along_ray(&self, x0: &[F], d: &[F]) -> Result<(F, F, F)> {
        let qd = self.q.mul_vec(d)?;
        let alpha = dot(d, &qd);
        let beta = dot(x0, &qd) * F::from_i64(2) + dot(&self.c, d);
        Ok((alpha, beta, self.evaluate(x0)?))
    }
}

/// Decoupled diagonal form of a quadratic function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoupledForm<F> {
    pub s: Matrix<F>,
    pub s_inv: Matrix<F>,
    pub lambda: Vec<F>,
    pub v: Vec<F>,
    pub u: Vec<F>,
    pub gamma: F,
}

impl<F: OrderedField> DecoupledForm<F> {
    pub fn to_y(&self, x: &[F]) -> Result<Vec<F>> {
        let shifted: Vec<F> = x.iter().zip(&self.v).map(|(a, b)| a.clone() - b).collect();
        self.s.mul_vec(&shifted)
    }

    /// `x = S⁻¹ y + v`.
    pub fn to_x(&self, y: &[F]) -> Result<Vec<F>> {
        let mut x = self.s_inv.mul_vec(y)?;
        for (xi, vi) in x.iter_mut().zip(&self.v) {
            *xi += vi;
        }
        Ok(x)
    }

    /// Direction pullback `dx = S⁻¹ dy`.
    pub fn to_x_direction(&self, dy: &[F]) -> Result<Vec<F>> {
        self.s_inv.mul_vec(dy)
    }

    /// Evaluates the right-hand side of the decoupled identity at `x`.
    pub fn evaluate(&self, x: &[F]) -> Result<F> {
        self.y_objective()?.evaluate(&self.to_y(x)?)
    }

    /// `yᵀΛy + uᵀy + γ′`.
    pub fn y_objective(&self) -> Result<QuadraticFunction<F>> {
        QuadraticFunction::diagonal(&self.lambda, self.u.clone(), self.gamma.clone())
    }

    pub fn linear_support(&self) -> usize {
        self.u.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Completes the square on the nonsingular part of a Lagrange
/// diagonalization; kernel components of the shift are set to zero.
pub fn decouple<F: OrderedField>(f: &QuadraticFunction<F>) -> Result<DecoupledForm<F>> {
    let diag = lagrange_diagonalize(&f.q)?;
    // ĉ = S⁻ᵀ c = (S⁻¹)ᵀ c
    let c_hat = diag.s_inv.transpose_mul_vec(&f.c)?;
    let n = f.dim();
    let quarter = half::<F>() * half::<F>();
    let mut v_prime = vec![F::zero(); n];
    let mut u = vec![F::zero(); n];
    let mut correction = F::zero();
    for i in 0..n {
        let lam = &diag.lambda[i];
        if lam.is_zero() {
            u[i] = c_hat[i].clone();
        } else if !c_hat[i].is_zero() {
            let lam_inv = lam.inv()?;
            v_prime[i] = -(c_hat[i].clone() * &lam_inv * half::<F>());
            correction += &(c_hat[i].clone() * &c_hat[i] * &lam_inv);
        }
    }
    let gamma = f.gamma.clone() - &(correction * &quarter);
    let v = diag.s_inv.mul_vec(&v_prime)?;
    Ok(DecoupledForm {
        s: diag.s,
        s_inv: diag.s_inv,
        lambda: diag.lambda,
        v,
        u,
        gamma,
    })
}

/// Rotates the linear term onto a single kernel coordinate.
///
/// With `k` the first index where `Λₖ = 0` and `p` the first index where
/// `uₚ ≠ 0`, the new coordinates are `y′ₖ = uᵀy / uₚ`, `y′ₚ = yₖ` (when
/// `p ≠ k`) and `y′ᵢ = yᵢ` otherwise. Only kernel coordinates are touched,
/// so `Λ` is unchanged and the new linear term is `uₚ eₖ`.
pub fn align_linear_term<F: OrderedField>(d: &DecoupledForm<F>) -> Result<DecoupledForm<F>> {
    if d.linear_support() <= 1 {
        return Ok(d.clone());
    }
    let n = d.lambda.len();
    let k = d
        .lambda
        .iter()
        .position(F::is_zero)
        .expect("Λu = 0 with u ≠ 0 forces a kernel coordinate");
    let p = d.u.iter().position(|v| !v.is_zero()).expect("u ≠ 0");
    let up_inv = d.u[p].inv()?;

    let mut r = Matrix::identity(n);
    for (j, uj) in d.u.iter().enumerate() {
        r[(k, j)] = uj.clone() * &up_inv;
    }
    if p != k {
        for j in 0..n {
            r[(p, j)] = if j == k { F::one() } else { F::zero() };
        }
    }
    let r_inv = invert(&r)?;
    let mut u = vec![F::zero(); n];
    u[k] = d.u[p].clone();
    Ok(DecoupledForm {
        s: r.mul(&d.s)?,
        s_inv: d.s_inv.mul(&r_inv)?,
        lambda: d.lambda.clone(),
        v: d.v.clone(),
        u,
        gamma: d.gamma.clone(),
    })
}

/// `f′(z) = f(M z + p)`.
pub fn substitute_into_function<F: OrderedField>(
    f: &QuadraticFunction<F>,
    map: &AffineMap<F>,
) -> Result<QuadraticFunction<F>> {
    if map.m.rows() != f.dim() {
        return Err(dim_mismatch("affine map does not match objective dimension"));
    }
    let qm = f.q.mul(&map.m)?;
    let q_new = map.m.transpose().mul(&qm)?;
    let qp = f.q.mul_vec(&map.p)?;
    let two = F::from_i64(2);
    let c_new = map
        .m
        .transpose_mul_vec(&qp)?
        .into_iter()
        .zip(map.m.transpose_mul_vec(&f.c)?)
        .map(|(a, b)| a * &two + &b)
        .collect();
    let gamma = dot(&map.p, &qp) + dot(&f.c, &map.p) + &f.gamma;
    Ok(QuadraticFunction {
        q: q_new,
        c: c_new,
        gamma,
    })
}

/// Re-expresses `(P, f)` in `y = S(x − v)`: `A′ = A S⁻¹`, `b′ = b − A v`,
/// objective `yᵀΛy + uᵀy + γ′`.
pub fn change_coordinates<F: OrderedField>(
    p: &Polyhedron<F>,
    d: &DecoupledForm<F>,
) -> Result<(Polyhedron<F>, QuadraticFunction<F>)> {
    if p.dim() != d.lambda.len() {
        return Err(dim_mismatch("polyhedron and decomposition dimensions differ"));
    }
    let a_y = p.a().mul(&d.s_inv)?;
    let av = p.a().mul_vec(&d.v)?;
    let b_y = p.b().iter().zip(av).map(|(b, t)| b.clone() - &t).collect();
    let mut p_y = Polyhedron::new(a_y, b_y)?;
    if !p.is_raw() {
        // S⁻¹ is invertible, so nonzero rows stay nonzero.
        p_y = crate::poly::preprocess_zero_rows(&p_y).expect("no zero rows");
    }
    Ok((p_y, d.y_objective()?))
}
