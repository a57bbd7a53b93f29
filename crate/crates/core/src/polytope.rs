//! Lattice point counting for incidence systems and weighted simplex counts.
//!
//! `count_solutions` counts strictly positive integer vectors x with
//! A x = b for an incidence system A (the lattice points of the fatgraph
//! polytope P_Gamma(b)); `direct_count` assembles the automorphism-weighted
//! sum over all labeled fatgraphs of type (g, n). `weighted_simplex_count`
//! computes N_P(phi, k) = sum of phi(x) over lattice points of the k-th
//! dilate of a simplex, closed or interior, for weighted Ehrhart checks.

use crate::algebra::{frac, format_rational, Rational};
use crate::error::Result;
use crate::fatgraph::{enumerate, IncidenceSystem};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Counts positive integer solutions of A x = b. Returns 0 when infeasible,
/// in particular whenever the total boundary length is odd.
pub fn count_solutions(system: &IncidenceSystem, b: &[u64]) -> u64 {
    let mut count = 0u64;
    solve(system, b, &mut |_| count += 1);
    count
}

/// All positive integer solutions of A x = b, duplicate-free in
/// lexicographic order.
pub fn enumerate_solutions(system: &IncidenceSystem, b: &[u64]) -> SolutionSet {
    let mut solutions = Vec::new();
    solve(system, b, &mut |x| solutions.push(x.to_vec()));
    SolutionSet {
        system: system.clone(),
        b: b.to_vec(),
        solutions,
    }
}

/// Depth-first search over edge values with residual feasibility pruning.
/// Visits solutions in lexicographic order.
fn solve(system: &IncidenceSystem, b: &[u64], visit: &mut dyn FnMut(&[u64])) {
    let rows = &system.matrix;
    let n = system.n_rows();
    let e = system.n_cols();
    assert_eq!(b.len(), n);
    if e == 0 {
        if b.iter().all(|&v| v == 0) {
            visit(&[]);
        }
        return;
    }
    // suffix_min[i][c] = sum over columns >= c of rows[i], the least demand
    // the remaining columns can place on row i (every x >= 1).
    let mut suffix_min = vec![vec![0u64; e + 1]; n];
    for i in 0..n {
        for c in (0..e).rev() {
            suffix_min[i][c] = suffix_min[i][c + 1] + rows[i][c] as u64;
        }
    }
    let mut residual: Vec<u64> = b.to_vec();
    let mut x = vec![0u64; e];

    fn rec(
        rows: &[Vec<u32>],
        suffix_min: &[Vec<u64>],
        residual: &mut Vec<u64>,
        x: &mut Vec<u64>,
        col: usize,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        let n = rows.len();
        let e = x.len();
        if col == e {
            if residual.iter().all(|&r| r == 0) {
                visit(x);
            }
            return;
        }
        // Upper bound for x[col] from each row it touches.
        let mut hi = u64::MAX;
        for i in 0..n {
            let a = rows[i][col] as u64;
            let future = suffix_min[i][col + 1];
            if a > 0 {
                if residual[i] < future + a {
                    return; // even x[col] = 1 overshoots
                }
                hi = hi.min((residual[i] - future) / a);
            } else if residual[i] < future {
                return;
            }
        }
        if hi == 0 {
            return;
        }
        for v in 1..=hi {
            for i in 0..n {
                residual[i] -= rows[i][col] as u64 * v;
            }
            x[col] = v;
            rec(rows, suffix_min, residual, x, col + 1, visit);
            for i in 0..n {
                residual[i] += rows[i][col] as u64 * v;
            }
        }
        x[col] = 0;
    }
    rec(rows, &suffix_min, &mut residual, &mut x, 0, visit);
}

/// A materialized solution listing (the dessin listing: each solution is an
/// integer-metric fatgraph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub system: IncidenceSystem,
    pub b: Vec<u64>,
    pub solutions: Vec<Vec<u64>>,
}

/// JSON form: {"A": [[..]], "b": [..], "solutions": [[..], ..]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionSetJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
    pub b: Vec<u64>,
    pub solutions: Vec<Vec<u64>>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn to_json(&self) -> SolutionSetJson {
        SolutionSetJson {
            a: self.system.matrix.clone(),
            b: self.b.clone(),
            solutions: self.solutions.clone(),
        }
    }

    pub fn from_json(json: SolutionSetJson) -> SolutionSet {
        SolutionSet {
            system: IncidenceSystem::new(json.a),
            b: json.b,
            solutions: json.solutions,
        }
    }
}

/// The weighted count N_{g,n}(b) = sum over labeled fatgraphs of
/// N_Gamma(b)/|Aut Gamma|, by direct enumeration.
pub fn direct_count(g: usize, n: usize, b: &[u64]) -> Result<Rational> {
    let classes = enumerate(g, n)?;
    let mut acc = Rational::zero();
    for (graph, aut) in classes.iter() {
        let hits = count_solutions(&graph.incidence_matrix(), b);
        if hits > 0 {
            acc += frac(hits as i64, *aut as i64);
        }
    }
    Ok(acc)
}

/// A simplex {x >= 0 : c . x <= M} with a monomial weight phi(x) = prod
/// x_i^{w_i}; the k-th dilate scales the bound to k M.
#[derive(Clone, Debug)]
pub struct SimplexSpec {
    pub coeffs: Vec<u64>,
    pub bound: u64,
    pub weight: Vec<u32>,
}

impl SimplexSpec {
    /// P1 = {x, y >= 0, x + 2y <= 2} with weight x^(2m+1) y.
    pub fn p1(m: u32) -> SimplexSpec {
        SimplexSpec {
            coeffs: vec![1, 2],
            bound: 2,
            weight: vec![2 * m + 1, 1],
        }
    }

    /// P2 = {x, y, z >= 0, x + y + 2z <= 2} with weight x^(2m+1) y^(2m'+1) z.
    pub fn p2(m: u32, mp: u32) -> SimplexSpec {
        SimplexSpec {
            coeffs: vec![1, 1, 2],
            bound: 2,
            weight: vec![2 * m + 1, 2 * mp + 1, 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn weight_degree(&self) -> usize {
        self.weight.iter().map(|&w| w as usize).sum()
    }
}

/// N_P(phi, k) (closed) or N0_P(phi, k) (interior): the weight sum over
/// lattice points of the k-th dilate.
pub fn weighted_simplex_count(spec: &SimplexSpec, k: u64, interior: bool) -> Rational {
    let budget = spec.bound * k;
    let mut acc = BigInt::zero();
    let mut point = vec![0u64; spec.dim()];
    weighted_rec(spec, interior, budget, 0, 0, &mut point, &mut acc);
    Rational::from_integer(acc)
}

fn weighted_rec(
    spec: &SimplexSpec,
    interior: bool,
    budget: u64,
    axis: usize,
    used: u64,
    point: &mut Vec<u64>,
    acc: &mut BigInt,
) {
    if axis == spec.dim() {
        if !interior || used < budget {
            let mut w = BigInt::from(1);
            for (x, &e) in point.iter().zip(&spec.weight) {
                if e > 0 {
                    w *= BigInt::from(*x).pow(e);
                }
            }
            *acc += w;
        }
        return;
    }
    let c = spec.coeffs[axis];
    let lo = if interior { 1 } else { 0 };
    let mut v = lo;
    while used + c * v <= budget {
        point[axis] = v;
        weighted_rec(spec, interior, budget, axis + 1, used + c * v, point, acc);
        v += 1;
    }
    point[axis] = 0;
}

/// The interpolating polynomial of k -> weighted_simplex_count(spec, k),
/// fitted exactly on k = 1 ..= deg(phi) + dim + 1. By the weighted Ehrhart
/// theorem this is the counting function for all k >= 1, and evaluation at
/// -k gives the reciprocity partner.
pub fn weighted_ehrhart_polynomial(
    spec: &SimplexSpec,
    interior: bool,
) -> Result<crate::algebra::UniPolynomial> {
    let deg = spec.weight_degree() + spec.dim();
    let nodes: Vec<(Rational, Rational)> = (1..=deg as u64 + 1)
        .map(|k| {
            (
                Rational::from_integer(BigInt::from(k)),
                weighted_simplex_count(spec, k, interior),
            )
        })
        .collect();
    crate::algebra::interpolate_univariate(&nodes)
}

#[allow(dead_code)]
fn _fmt(r: &Rational) -> String {
    format_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn system(rows: &[&[u32]]) -> IncidenceSystem {
        IncidenceSystem::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn forced_minimum() {
        assert_eq!(count_solutions(&system(&[&[2, 2, 2]]), &[6]), 1);
    }

    #[test]
    fn unique_solution_for_dominant_boundary() {
        let s = system(&[&[2, 1, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(count_solutions(&s, &[6, 2, 2]), 1);
        assert_eq!(
            enumerate_solutions(&s, &[6, 2, 2]).solutions,
            vec![vec![1, 2, 2]]
        );
    }

    #[test]
    fn figure8_feeds_n11() {
        assert_eq!(count_solutions(&system(&[&[2, 2]]), &[4]), 1);
        assert_eq!(
            enumerate_solutions(&system(&[&[2, 2]]), &[6]).solutions,
            vec![vec![1, 2], vec![2, 1]]
        );
    }

    #[test]
    fn listing_examples() {
        let s = system(&[&[2, 2, 2]]);
        assert_eq!(
            enumerate_solutions(&s, &[8]).solutions,
            vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]
        );
        assert!(enumerate_solutions(&s, &[4]).is_empty());
    }

    #[test]
    fn odd_total_gives_zero() {
        for (g, n, b) in [(0usize, 3usize, vec![1u64, 2, 2]), (1, 1, vec![5])] {
            assert_eq!(direct_count(g, n, &b).unwrap(), rat(0));
        }
    }

    #[test]
    fn direct_count_examples() {
        assert_eq!(direct_count(0, 3, &[2, 2, 2]).unwrap(), rat(1));
        assert_eq!(direct_count(1, 1, &[4]).unwrap(), frac(1, 4));
        assert_eq!(direct_count(0, 4, &[2, 2, 2, 2]).unwrap(), rat(3));
    }

    #[test]
    fn parity_vanishing_over_enumerated_systems() {
        for (g, n) in [(0usize, 3usize), (1, 1), (0, 4), (1, 2)] {
            for (graph, _) in enumerate(g, n).unwrap().iter() {
                let inc = graph.incidence_matrix();
                // Any odd-total b is infeasible since columns sum to 2.
                let mut b = vec![2u64; n];
                b[0] = 3;
                assert_eq!(count_solutions(&inc, &b), 0);
            }
        }
    }

    #[test]
    fn p1_point_counts() {
        let mut p1_flat = SimplexSpec::p1(0);
        p1_flat.weight = vec![0, 0]; // phi = 1
        assert_eq!(weighted_simplex_count(&p1_flat, 1, false), rat(4));
        assert_eq!(weighted_simplex_count(&p1_flat, 1, true), rat(0));
    }

    #[test]
    fn ehrhart_polynomiality_and_volume() {
        // Counting function of P1 with phi = 1 has degree 2 and leading
        // coefficient Vol(P1) = 2 * 1 = area under x + 2y <= 2 in x,y >= 0.
        let mut p1_flat = SimplexSpec::p1(0);
        p1_flat.weight = vec![0, 0];
        let poly = weighted_ehrhart_polynomial(&p1_flat, false).unwrap();
        assert_eq!(poly.degree(), Some(2));
        assert_eq!(poly.coeff(2), rat(1)); // area of the triangle is 1
        for k in 1..=12u64 {
            assert_eq!(
                poly.eval_int(k as i64),
                weighted_simplex_count(&p1_flat, k, false)
            );
        }
    }

    #[test]
    fn weighted_reciprocity_small_cases() {
        // N0_P(phi, k) = (-1)^(deg phi + n) N_P(phi, -k).
        for spec in [SimplexSpec::p1(0), SimplexSpec::p1(1), SimplexSpec::p2(0, 0)] {
            let closed = weighted_ehrhart_polynomial(&spec, false).unwrap();
            let sign = if (spec.weight_degree() + spec.dim()) % 2 == 0 {
                rat(1)
            } else {
                rat(-1)
            };
            for k in 1..=10i64 {
                let interior = weighted_simplex_count(&spec, k as u64, true);
                assert_eq!(interior, sign.clone() * closed.eval_int(-k));
            }
        }
    }
}
