//! Sparse multivariate polynomials over the rationals.
//!
//! Variable i of a `SquarePolynomial` stands for b_i^2 (a squared boundary
//! length), which is why rendering prints `b1^2` for exponent 1. The
//! representation is a map from exponent vectors to nonzero coefficients.

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::unipoly::{interpolate_univariate, UniPolynomial};

/// Sparse polynomial in `nvars` variables with rational coefficients and no
/// explicitly stored zero terms. Exponent vectors always have length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SquarePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SquarePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c` to the coefficient of the given exponent vector, dropping the
    /// term if it cancels to zero.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in deterministic (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of an exponent vector (zero if absent).
    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree among terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .keys()
            .map(|e| e[var] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, xs: &[Rational]) -> Rational {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in xs.iter().zip(exps.iter()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SquarePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn add(&self, rhs: &SquarePolynomial) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SquarePolynomial) -> Self {
        self.add(&rhs.scale(&-Rational::from_integer(1.into())))
    }

    pub fn mul(&self, rhs: &SquarePolynomial) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Homogeneous part of top total degree.
    pub fn top_homogeneous(&self) -> Self {
        let d = self.total_degree();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().map(|&x| x as usize).sum::<usize>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Relabels variables: old variable i becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// True when invariant under every permutation swapping positions inside
    /// the given slot set (checked on adjacent transpositions).
    pub fn is_symmetric_in(&self, slots: &[usize]) -> bool {
        for w in slots.windows(2) {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(w[0], w[1]);
            if self.permute_vars(&perm) != *self {
                return false;
            }
        }
        true
    }

    /// Renders with `b{i}^2` variables and a factored-out integer
    /// denominator, e.g. `(b1^2 - 4)/48`.
    pub fn render(&self) -> String {
        use num_bigint::BigInt;
        use num_traits::One;
        if self.is_zero() {
            return "0".to_string();
        }
        let denom = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        // Descending by total degree, then descending lex, reads naturally.
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let int_c = (c * Rational::from_integer(denom.clone())).to_integer();
            let neg = int_c.sign() == num_bigint::Sign::Minus;
            let mag = int_c.magnitude().to_string();
            let mut factors: Vec<String> = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    factors.push(format!("b{}^{}", i + 1, 2 * x));
                }
            }
            let body = if factors.is_empty() {
                mag
            } else if mag == "1" {
                factors.join("*")
            } else {
                format!("{}*{}", mag, factors.join("*"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if denom.is_one() {
            out
        } else if self.terms.len() == 1 {
            format!("{out}/{denom}")
        } else {
            format!("({out})/{denom}")
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let mut p = Self::zero(json.nvars);
        for t in &json.terms {
            if t.exp.len() != json.nvars {
                return Err(Error::Parse(format!(
                    "exponent vector {:?} does not have nvars = {}",
                    t.exp, json.nvars
                )));
            }
            p.add_term(t.exp.clone(), parse_rational(&t.coef)?);
        }
        Ok(p)
    }
}

/// Serialized polynomial: coefficients as exact fraction strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

/// Interpolates the unique polynomial of per-variable degree <= degree_bound
/// through a full tensor-product grid of values.
pub fn tensor_interpolate(
    nvars: usize,
    degree_bound: usize,
    grid: &BTreeMap<Vec<Rational>, Rational>,
) -> Result<SquarePolynomial> {
    let per_axis = degree_bound + 1;
    let expected = per_axis
        .checked_pow(nvars as u32)
        .ok_or_else(|| Error::InvalidArgument("grid size overflow".into()))?;
    if grid.len() != expected {
        return Err(Error::IncompleteGrid { expected: per_axis });
    }
    for key in grid.keys() {
        if key.len() != nvars {
            return Err(Error::IncompleteGrid { expected: per_axis });
        }
    }
    tensor_rec(nvars, per_axis, grid)
}

fn tensor_rec(
    nvars: usize,
    per_axis: usize,
    grid: &BTreeMap<Vec<Rational>, Rational>,
) -> Result<SquarePolynomial> {
    if nvars == 0 {
        let v = grid
            .get(&Vec::new())
            .ok_or(Error::IncompleteGrid { expected: per_axis })?;
        return Ok(SquarePolynomial::constant(0, v.clone()));
    }
    // Split on the first coordinate.
    let mut groups: BTreeMap<Rational, BTreeMap<Vec<Rational>, Rational>> = BTreeMap::new();
    for (key, value) in grid {
        groups
            .entry(key[0].clone())
            .or_default()
            .insert(key[1..].to_vec(), value.clone());
    }
    if groups.len() != per_axis {
        return Err(Error::IncompleteGrid { expected: per_axis });
    }
    let axis_nodes: Vec<Rational> = groups.keys().cloned().collect();
    let mut out = SquarePolynomial::zero(grid.keys().next().map(|k| k.len()).unwrap_or(nvars));
    for (node, sub) in &groups {
        let tail_poly = tensor_rec(nvars - 1, per_axis, sub)?;
        let basis = lagrange_basis(&axis_nodes, node)?;
        for (deg, c) in basis.terms() {
            for (e_tail, c2) in tail_poly.terms() {
                let mut e = Vec::with_capacity(nvars);
                e.push(deg as u32);
                e.extend_from_slice(e_tail);
                out.add_term(e, c * c2);
            }
        }
    }
    Ok(out)
}

/// Lagrange basis polynomial taking value 1 at `at` and 0 at the other nodes.
fn lagrange_basis(nodes: &[Rational], at: &Rational) -> Result<UniPolynomial> {
    let pts: Vec<(Rational, Rational)> = nodes
        .iter()
        .map(|x| {
            (
                x.clone(),
                if x == at {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                },
            )
        })
        .collect();
    interpolate_univariate(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};
    use proptest::prelude::*;

    fn grid_of(points: &[(&[i64], (i64, i64))]) -> BTreeMap<Vec<Rational>, Rational> {
        points
            .iter()
            .map(|(xs, (n, d))| (xs.iter().map(|&x| rat(x)).collect(), frac(*n, *d)))
            .collect()
    }

    #[test]
    fn constant_grid() {
        let g = grid_of(&[(&[1], (1, 1)), (&[2], (1, 1))]);
        let p = tensor_interpolate(1, 1, &g).unwrap();
        assert_eq!(p, SquarePolynomial::constant(1, rat(1)));
    }

    #[test]
    fn sum_of_two_vars() {
        let g = grid_of(&[
            (&[1, 1], (2, 1)),
            (&[1, 2], (3, 1)),
            (&[2, 1], (3, 1)),
            (&[2, 2], (4, 1)),
        ]);
        let p = tensor_interpolate(2, 1, &g).unwrap();
        let mut expected = SquarePolynomial::zero(2);
        expected.add_term(vec![1, 0], rat(1));
        expected.add_term(vec![0, 1], rat(1));
        assert_eq!(p, expected);
    }

    #[test]
    fn torus_one_point_from_nodes() {
        // Values of (x - 4)/48 at the x-nodes 4 and 16 (b = 2 and 4).
        let g = grid_of(&[(&[4], (0, 1)), (&[16], (1, 4))]);
        let p = tensor_interpolate(1, 1, &g).unwrap();
        let mut expected = SquarePolynomial::zero(1);
        expected.add_term(vec![1], frac(1, 48));
        expected.add_term(vec![0], frac(-1, 12));
        assert_eq!(p, expected);
    }

    #[test]
    fn incomplete_grid_rejected() {
        let g = grid_of(&[(&[1, 1], (2, 1)), (&[1, 2], (3, 1)), (&[2, 1], (3, 1))]);
        assert!(matches!(
            tensor_interpolate(2, 1, &g),
            Err(Error::IncompleteGrid { .. })
        ));
    }

    #[test]
    fn render_matches_expected_shapes() {
        let mut p = SquarePolynomial::zero(1);
        p.add_term(vec![1], frac(1, 48));
        p.add_term(vec![0], frac(-1, 12));
        assert_eq!(p.render(), "(b1^2 - 4)/48");

        let mut q = SquarePolynomial::zero(2);
        q.add_term(vec![1, 0], frac(1, 4));
        q.add_term(vec![0, 1], frac(1, 4));
        q.add_term(vec![0, 0], rat(-1));
        assert_eq!(q.render(), "(b1^2 + b2^2 - 4)/4");
    }

    #[test]
    fn json_round_trip() {
        let mut p = SquarePolynomial::zero(3);
        p.add_term(vec![2, 0, 1], frac(-7, 3));
        p.add_term(vec![0, 0, 0], rat(5));
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let back = SquarePolynomial::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    proptest! {
        /// Tensor interpolation is exact: re-evaluating on the grid returns
        /// the inputs bit-for-bit.
        #[test]
        fn tensor_reproduces_grid(
            nvars in 1usize..3,
            bound in 0usize..3,
            seed_coeffs in proptest::collection::vec((-9i64..9, 1i64..5), 12),
        ) {
            // Random polynomial of per-variable degree <= bound, sampled on
            // the grid, must be recovered term-for-term.
            let mut truth = SquarePolynomial::zero(nvars);
            let mut idx = 0usize;
            let mut exps = vec![0u32; nvars];
            loop {
                let (n, d) = seed_coeffs[idx % seed_coeffs.len()];
                idx += 1;
                truth.add_term(exps.clone(), frac(n, d));
                // Odometer over exponent space.
                let mut pos = 0;
                loop {
                    if pos == nvars { break; }
                    exps[pos] += 1;
                    if exps[pos] as usize <= bound { break; }
                    exps[pos] = 0;
                    pos += 1;
                }
                if pos == nvars { break; }
            }
            let mut grid = BTreeMap::new();
            let mut node = vec![0usize; nvars];
            loop {
                let xs: Vec<Rational> = node.iter().map(|&i| rat(i as i64 + 1)).collect();
                grid.insert(xs.clone(), truth.eval(&xs));
                let mut pos = 0;
                loop {
                    if pos == nvars { break; }
                    node[pos] += 1;
                    if node[pos] <= bound { break; }
                    node[pos] = 0;
                    pos += 1;
                }
                if pos == nvars { break; }
            }
            let fitted = tensor_interpolate(nvars, bound, &grid).unwrap();
            prop_assert_eq!(fitted, truth);
        }
    }
}
