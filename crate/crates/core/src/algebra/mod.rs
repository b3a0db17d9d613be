//! Exact coefficient rings, sparse polynomials and matrix kernels.

pub mod budget;
pub mod error;
pub mod gf;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use budget::{Budget, BudgetExceeded, DEFAULT_TERM_BUDGET, TERM_BUDGET_ENV};
pub use error::AlgebraError;
pub use gf::{Embedding, Gf, GfField};
pub use matrix::Matrix;
pub use poly::{PolyRing, Polynomial, VarSet};
pub use ring::{from_bigint, Ring};
pub use scalar::{RingSpec, Scalar};
