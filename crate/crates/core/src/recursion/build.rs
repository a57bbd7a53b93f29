//! Numeric family construction: tensor interpolation of recursion values.

use super::{is_stable, Evaluator, LatticeCountPolynomial};
use crate::algebra::{tensor_interpolate, Rational, SquarePolynomial};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Fits the full parity-class family of N_{g,n} from recursion values on a
/// tensor grid: D+1 nodes per axis (D = 3g-3+n), odd slots at b = 1,3,...,
/// even slots at b = 2,4,.... Each class is validated at one off-grid point
/// against the evaluator before being accepted.
pub fn build_polynomial(
    eval: &Evaluator,
    g: usize,
    n: usize,
) -> Result<LatticeCountPolynomial> {
    if !is_stable(g, n) || n == 0 {
        return Err(Error::Unstable { g, n });
    }
    let degree = 3 * g + n - 3;
    let mut classes = BTreeMap::new();
    for odd_count in (0..=n).step_by(2) {
        let poly = build_class(eval, g, n, degree, odd_count)?;
        classes.insert(odd_count, poly);
    }
    LatticeCountPolynomial::new(g, n, classes)
}

fn node(slot_is_odd: bool, index: usize) -> u64 {
    if slot_is_odd {
        2 * index as u64 + 1
    } else {
        2 * index as u64 + 2
    }
}

fn build_class(
    eval: &Evaluator,
    g: usize,
    n: usize,
    degree: usize,
    odd_count: usize,
) -> Result<SquarePolynomial> {
    let per_axis = degree + 1;
    let mut grid: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    let mut idx = vec![0usize; n];
    loop {
        let b: Vec<u64> = idx
            .iter()
            .enumerate()
            .map(|(slot, &i)| node(slot < odd_count, i))
            .collect();
        let xs: Vec<Rational> = b
            .iter()
            .map(|&v| Rational::from_integer(((v * v) as i64).into()))
            .collect();
        grid.insert(xs, eval.eval(g, n, &b)?);
        // Odometer over the grid.
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            idx[pos] += 1;
            if idx[pos] < per_axis {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    let poly = tensor_interpolate(n, degree, &grid)?;
    if poly.total_degree() > degree {
        return Err(Error::Inconsistency(format!(
            "fitted class {odd_count} of ({g},{n}) has total degree {} > {degree}",
            poly.total_degree()
        )));
    }
    // Off-grid validation point guards against degree-bound errors.
    let b_check: Vec<u64> = (0..n)
        .map(|slot| {
            if slot < odd_count {
                2 * degree as u64 + 3
            } else {
                2 * degree as u64 + 4
            }
        })
        .collect();
    let xs: Vec<Rational> = b_check
        .iter()
        .map(|&v| Rational::from_integer(((v * v) as i64).into()))
        .collect();
    if poly.eval(&xs) != eval.eval(g, n, &b_check)? {
        return Err(Error::Inconsistency(format!(
            "class {odd_count} of ({g},{n}) fails off-grid validation at {b_check:?}"
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    #[test]
    fn torus_one_marked_point() {
        let ev = Evaluator::new();
        let family = build_polynomial(&ev, 1, 1).unwrap();
        let even = family.class(0).unwrap();
        let mut expected = SquarePolynomial::zero(1);
        expected.add_term(vec![1], frac(1, 48));
        expected.add_term(vec![0], frac(-1, 12));
        assert_eq!(even, &expected);
    }

    #[test]
    fn four_times_punctured_sphere_classes() {
        let ev = Evaluator::new();
        let family = build_polynomial(&ev, 0, 4).unwrap();
        // All even: (sum x_i - 4)/4; two odd: (sum x_i - 2)/4; all odd equals
        // the all-even polynomial.
        let mut even = SquarePolynomial::zero(4);
        for v in 0..4 {
            let mut e = vec![0u32; 4];
            e[v] = 1;
            even.add_term(e, frac(1, 4));
        }
        let mut two_odd = even.clone();
        even.add_term(vec![0; 4], rat(-1));
        two_odd.add_term(vec![0; 4], frac(-1, 2));
        assert_eq!(family.class(0).unwrap(), &even);
        assert_eq!(family.class(2).unwrap(), &two_odd);
        assert_eq!(family.class(4).unwrap(), &even);
    }

    #[test]
    fn torus_two_marked_points_odd_class() {
        let ev = Evaluator::new();
        let family = build_polynomial(&ev, 1, 2).unwrap();
        // (x1 + x2 - 2)(x1 + x2 - 10)/384 for both arguments odd.
        let mut s = SquarePolynomial::zero(2);
        s.add_term(vec![1, 0], rat(1));
        s.add_term(vec![0, 1], rat(1));
        let lhs = s.add(&SquarePolynomial::constant(2, rat(-2)));
        let rhs = s.add(&SquarePolynomial::constant(2, rat(-10)));
        let expected = lhs.mul(&rhs).scale(&frac(1, 384));
        assert_eq!(family.class(2).unwrap(), &expected);
    }

    #[test]
    fn family_eval_routes_parities() {
        let ev = Evaluator::new();
        let family = build_polynomial(&ev, 0, 4).unwrap();
        assert_eq!(family.eval_ints(&[2, 1, 2, 1]), rat(2));
        assert_eq!(family.eval_ints(&[1, 2, 2, 2]), rat(0));
        // Euler characteristic by extrapolation to zero.
        assert_eq!(family.eval_ints(&[0, 0, 0, 0]), rat(-1));
    }
}
