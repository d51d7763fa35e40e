//! Exact-arithmetic toolkit for interpolation (Capelli) polynomials and
//! commuting difference operators attached to a lattice with a reflection
//! group action.
//!
//! The crate is organized around a validated structure `(Γ, Σ, W, ℓ)`:
//!
//! - [`exact`]: arbitrary-precision rationals, sparse multivariate
//!   polynomials, factored rational functions, exact linear solving.
//! - [`structure`]: the structure data itself — group closure, root
//!   extraction, orbits, ρ classification and the axiom suite.
//! - [`catalog`]: machine-readable constructors for the tabulated case
//!   families I through VIb.
//! - [`lattice`]: enumeration and order structure on the weight monoids
//!   Λ₊, Λ, Λ₁ and paths between weights.
//! - [`interp`]: invariant polynomial bases and the interpolation
//!   polynomials p_λ defined by vanishing conditions.
//! - [`diffop`]: the rational coefficient functions f_τ, the operators
//!   L and E = ℓ − L, and the commuting family D_h = exp(ad L)(h).
//! - [`pieri`]: Pieri coefficients by three independent routes and the
//!   virtual dimension d_λ.
//!
//! All arithmetic is exact; every major quantity is computable by at
//! least two independent routes for cross-validation.

pub mod catalog;
pub mod diffop;
mod error;
pub mod exact;
pub mod interp;
pub mod lattice;
pub mod pieri;
pub mod structure;

pub use error::{Error, Result};
pub use exact::{FactoredRationalFunction, LinearForm, Polynomial, Rational, Weight};
pub use structure::StructureData;
