//! Exact-arithmetic machinery for linked nets of vector spaces over
//! ℤⁿ-quivers: quiver combinatorics, axiom checks, minimal generating
//! polygons, linked projective spaces with their minor equations, local
//! charts, finite-field point enumeration and monomial smoothings.
//!
//! All arithmetic is exact: arbitrary-precision rationals, prime fields
//! and the rational function field ℚ(t). There is no floating point
//! anywhere in this crate.

pub mod doc;
pub mod fixtures;
pub mod linalg;
pub mod lp;
pub mod net;
pub mod sampling;
pub mod simple;
pub mod smoothing;
pub mod zquiver;
