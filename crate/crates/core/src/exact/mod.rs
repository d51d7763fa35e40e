//! Exact arithmetic substrate: rationals, linear forms, weights, sparse
//! multivariate polynomials, factored rational functions and exact
//! linear solving.
//!
//! Polynomials live in the Σ-coordinates of Γ: variable `i` represents
//! the basis element ω_i, weights carry Σ∨-coordinates, and the pairing
//! ω_i(η_j) = δ_ij makes evaluation a plain dot-product convention.

mod forms;
pub(crate) mod modular;
mod poly;
mod ratfun;
mod rational;
mod solve;

pub use forms::{LinearForm, Weight};
pub use poly::Polynomial;
pub use ratfun::{DenominatorFactor, FactoredRationalFunction};
pub use rational::Rational;
pub use solve::{invariant_subspace, nullspace, rank, solve_exact, solve_unique_rectangular};
