//! Exact lattice point counting on moduli spaces of curves.
//!
//! The library computes the lattice count polynomials N_{g,n}(b_1,...,b_n)
//! of the moduli space of genus g curves with n labeled points three
//! independent ways, entirely in exact rational arithmetic:
//!
//! - direct counting: enumerate the labeled fatgraphs of type (g,n) and count
//!   positive integer solutions of the incidence systems A_Gamma x = b,
//!   weighted by 1/|Aut Gamma| ([`polytope::direct_count`]);
//! - numeric recursion: evaluate N_{g,n} at integer points by the recursion
//!   from N_{0,3} and N_{1,1}, then fit the polynomial family by exact tensor
//!   interpolation ([`recursion::Evaluator`], [`recursion::build_polynomial`]);
//! - symbolic recursion: rebuild each family at the polynomial level with
//!   parity-restricted power-sum kernels ([`recursion::symbolic_step`]).
//!
//! From the families the [`invariants`] module extracts orbifold Euler
//! characteristics (three ways), psi-class intersection numbers, volume top
//! terms, vanishing windows and the n = 1 fatgraph census coefficients.

pub mod algebra;
pub mod error;
pub mod fatgraph;
pub mod invariants;
pub mod kernels;
pub mod polytope;
pub mod recursion;

pub use algebra::Rational;
pub use error::{Error, Result};
