//! Exact quadratic programming over linearly ordered fields.
//!
//! Decides `min xᵀQx + cᵀx + γ` subject to `Ax ≤ b` as Infeasible,
//! Unbounded (with a verifiable descent ray) or Optimal (with an exact
//! minimizer). All arithmetic is exact; the scalar type is any
//! [`OrderedField`], including the non-Archimedean [`RatFunc`].

pub mod error;
pub mod exactla;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod quadform;
pub mod solver;

pub use error::{Error, Result};
pub use field::{OrderedField, RatFunc, Rational, Sign};
pub use poly::Polyhedron;
pub use quadform::QuadraticFunction;
pub use solver::{min_qp_lof, Outcome, RayCertificate, SolveResult, Status};
