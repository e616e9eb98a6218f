//! Exact linear algebra over ℚ, prime fields 𝔽_p and ℚ(t).

mod field;
mod matrix;

pub use field::{Field, FieldError, FieldSpec, Poly, PrimeField, RatFn, RatFns, Rationals};
pub use matrix::{pmat, qmat, LinalgError, Matrix, Subspace};
