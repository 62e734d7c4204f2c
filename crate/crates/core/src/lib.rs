//! Exact arithmetic for the finite places of monogenic number fields,
//! consistent maps `c : J → Q` and the functionals they induce.

// `Error` carries polynomials and rationals for diagnostics; boxing it
// everywhere would buy nothing here.
#![allow(clippy::result_large_err)]

pub mod arith;
pub mod consistent;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod field;
pub mod functionals;
pub mod json;
pub mod linalg;
pub mod places;
pub mod poly;
pub mod rational;

pub use consistent::{ConsistentMap, EvaluationContext, PlaceTable, PrimeWeights};
pub use error::{Error, Result};
pub use field::{Automorphism, FieldElement, FieldEmbedding, NumberField};
pub use functionals::LogLinearValue;
pub use places::{Place, ValuationResult};
pub use poly::IntPolynomial;
pub use rational::Rational;
