//! The lattice count polynomial families N_{g,n} and the recursion engine
//! that produces them.
//!
//! N_{g,n}(b_1,...,b_n) is, for each parity pattern of the arguments, a
//! polynomial of total degree 3g-3+n in the squared variables b_i^2; classes
//! with an odd number of odd arguments vanish identically. The engine
//! evaluates values by the recursion from the base cases N_{0,3} and N_{1,1}
//! ([`Evaluator`]), fits families by exact tensor interpolation
//! ([`build_polynomial`]), and independently rebuilds them at the polynomial
//! level with parity kernels ([`symbolic_step`]).

mod build;
mod eval;
mod provider;
mod symbolic;
mod verify;

pub use build::build_polynomial;
pub use eval::{base_n03, base_n11, Evaluator};
pub(crate) use eval::{is_stable, recursion_rhs};
pub use provider::FamilyProvider;
pub use symbolic::{delta_cancellation_holds, symbolic_step, symbolic_step_with_pivot};
pub use verify::{n11_half_sum, verify_recursion, VerifyFailure, VerifyReport};

use crate::algebra::{PolyJson, Rational, SquarePolynomial};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The family of polynomials representing N_{g,n}, one per parity class.
///
/// The class with `odd_count` = k is the polynomial valid when exactly the
/// first k arguments are odd (any argument order reduces to this by the
/// separate symmetry in odd and even slots). Only even k are stored; odd k
/// classes are identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCountPolynomial {
    pub g: usize,
    pub n: usize,
    classes: BTreeMap<usize, SquarePolynomial>,
}

impl LatticeCountPolynomial {
    pub fn new(
        g: usize,
        n: usize,
        classes: BTreeMap<usize, SquarePolynomial>,
    ) -> Result<LatticeCountPolynomial> {
        for (&k, poly) in &classes {
            if k % 2 != 0 || k > n {
                return Err(Error::InvalidArgument(format!(
                    "parity class {k} invalid for n = {n}"
                )));
            }
            if poly.nvars() != n {
                return Err(Error::InvalidArgument(format!(
                    "class {k} polynomial has {} variables, expected {n}",
                    poly.nvars()
                )));
            }
        }
        Ok(LatticeCountPolynomial { g, n, classes })
    }

    /// Total degree bound 3g - 3 + n in the squared variables.
    pub fn degree_bound(&self) -> usize {
        3 * self.g + self.n - 3
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &SquarePolynomial)> {
        self.classes.iter().map(|(&k, p)| (k, p))
    }

    /// The stored polynomial for an even odd-count (identically zero classes
    /// for odd counts are not stored).
    pub fn class(&self, odd_count: usize) -> Option<&SquarePolynomial> {
        self.classes.get(&odd_count)
    }

    pub fn class_or_zero(&self, odd_count: usize) -> SquarePolynomial {
        self.classes
            .get(&odd_count)
            .cloned()
            .unwrap_or_else(|| SquarePolynomial::zero(self.n))
    }

    /// Evaluates N_{g,n} at a nonnegative integer vector (zero is the
    /// polynomial extrapolation, not a lattice count). Arguments are routed
    /// to canonical slots: odd values first, then even values.
    pub fn eval_ints(&self, b: &[u64]) -> Rational {
        assert_eq!(b.len(), self.n);
        let odd_count = b.iter().filter(|&&v| v % 2 == 1).count();
        if odd_count % 2 != 0 {
            return Rational::from_integer(0.into());
        }
        let Some(poly) = self.class(odd_count) else {
            return Rational::from_integer(0.into());
        };
        let mut ordered: Vec<u64> = Vec::with_capacity(self.n);
        ordered.extend(b.iter().filter(|&&v| v % 2 == 1));
        ordered.extend(b.iter().filter(|&&v| v % 2 == 0));
        let xs: Vec<Rational> = ordered
            .iter()
            .map(|&v| Rational::from_integer((v as i64 * v as i64).into()))
            .collect();
        poly.eval(&xs)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            g: self.g,
            n: self.n,
            classes: self
                .classes
                .iter()
                .map(|(&k, p)| ClassJson {
                    odd_count: k,
                    poly: p.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FamilyJson) -> Result<LatticeCountPolynomial> {
        let mut classes = BTreeMap::new();
        for c in &json.classes {
            classes.insert(c.odd_count, SquarePolynomial::from_json(&c.poly)?);
        }
        LatticeCountPolynomial::new(json.g, json.n, classes)
    }
}

/// Serialized family: {"g": .., "n": .., "classes": [{"odd_count": k, "poly": ..}]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub g: usize,
    pub n: usize,
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub odd_count: usize,
    pub poly: PolyJson,
}
