//! Dense univariate polynomials over the rationals, with exact Newton
//! interpolation.

use super::{format_rational, rat, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A univariate polynomial with `Rational` coefficients in ascending degree
/// order. Canonical form: empty vector for zero, nonzero leading coefficient
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolynomial {
    coeffs: Vec<Rational>,
}

impl UniPolynomial {
    pub fn zero() -> Self {
        UniPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPolynomial { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPolynomial { coeffs };
        p.normalize();
        p
    }

    /// The monomial c * x^deg.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPolynomial { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    /// True when only odd-degree monomials occur (zero counts as odd).
    pub fn is_odd_polynomial(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 1 || c.is_zero())
    }

    /// True when only even-degree monomials occur.
    pub fn is_even_polynomial(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Nonzero terms as (degree, coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Renders like `(k^3 - 4*k)/12` with a common integer denominator.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let denom = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| {
                num_integer::lcm(acc, c.denom().clone())
            });
        let mut parts: Vec<String> = Vec::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let int_c = (c * Rational::from_integer(denom.clone())).to_integer();
            let mag = int_c.magnitude().to_string();
            let sign = if int_c.sign() == num_bigint::Sign::Minus {
                "-"
            } else {
                "+"
            };
            let body = match (deg, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => var.to_string(),
                (1, _) => format!("{mag}*{var}"),
                (_, "1") => format!("{var}^{deg}"),
                _ => format!("{mag}*{var}^{deg}"),
            };
            if parts.is_empty() {
                parts.push(if sign == "-" {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!(" {sign} {body}"));
            }
        }
        let joined: String = parts.concat();
        if denom.is_one() {
            joined
        } else if self.terms().count() == 1 {
            format!("{joined}/{denom}")
        } else {
            format!("({joined})/{denom}")
        }
    }
}

impl Add for &UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, rhs: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &UniPolynomial {
    type Output = UniPolynomial;
    fn sub(self, rhs: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, rhs: &UniPolynomial) -> UniPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UniPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> UniPolynomial {
        UniPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Returns the unique polynomial of degree < nodes.len() through all nodes,
/// via exact Newton divided differences.
pub fn interpolate_univariate(nodes: &[(Rational, Rational)]) -> Result<UniPolynomial> {
    if nodes.is_empty() {
        return Err(Error::EmptyNodes);
    }
    for (i, (xi, _)) in nodes.iter().enumerate() {
        for (xj, _) in nodes.iter().skip(i + 1) {
            if xi == xj {
                return Err(Error::DuplicateNode(format_rational(xi)));
            }
        }
    }
    // Divided difference table, in place.
    let xs: Vec<Rational> = nodes.iter().map(|(x, _)| x.clone()).collect();
    let mut dd: Vec<Rational> = nodes.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..nodes.len() {
        for i in (level..nodes.len()).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = xs[i].clone() - xs[i - level].clone();
            dd[i] = num / den;
        }
    }
    // Expand Newton form sum_i dd[i] * prod_{j<i} (x - x_j).
    let mut result = UniPolynomial::zero();
    let mut basis = UniPolynomial::constant(Rational::one());
    for (i, c) in dd.iter().enumerate() {
        result = &result + &basis.scale(c);
        if i + 1 < nodes.len() {
            let lin = UniPolynomial::from_coeffs(vec![-xs[i].clone(), Rational::one()]);
            basis = &basis * &lin;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use proptest::prelude::*;

    fn nodes(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(x, y)| (rat(x), rat(y))).collect()
    }

    #[test]
    fn constant_through_equal_values() {
        let p = interpolate_univariate(&nodes(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(p, UniPolynomial::constant(rat(1)));
    }

    #[test]
    fn exact_square_data() {
        let p = interpolate_univariate(&nodes(&[(1, 1), (2, 4), (3, 9)])).unwrap();
        assert_eq!(p, UniPolynomial::monomial(2, rat(1)));
    }

    #[test]
    fn pair_sum_nodes_recover_closed_form() {
        // Brute-force oracle: sum of p*q over p+q=k with q even, at even k.
        let brute = |k: i64| -> Rational {
            let mut acc = 0i64;
            for q in (2..k).step_by(2) {
                acc += (k - q) * q;
            }
            rat(acc)
        };
        let pts: Vec<_> = [4i64, 6, 8, 10].iter().map(|&k| (rat(k), brute(k))).collect();
        let p = interpolate_univariate(&pts).unwrap();
        // 4*C(k/2+1, 3) expanded is k^3/12 - k/3.
        let expected = UniPolynomial::from_coeffs(vec![
            rat(0),
            frac(-1, 3),
            rat(0),
            frac(1, 12),
        ]);
        assert_eq!(p, expected);
        assert_eq!(p.eval_int(12), brute(12));
    }

    #[test]
    fn duplicate_abscissae_rejected() {
        assert!(matches!(
            interpolate_univariate(&nodes(&[(1, 1), (1, 2)])),
            Err(Error::DuplicateNode(_))
        ));
        assert!(matches!(
            interpolate_univariate(&[]),
            Err(Error::EmptyNodes)
        ));
    }

    #[test]
    fn parity_predicates() {
        let odd = UniPolynomial::from_coeffs(vec![rat(0), rat(2), rat(0), frac(1, 3)]);
        assert!(odd.is_odd_polynomial());
        assert!(!odd.is_even_polynomial());
        assert!(UniPolynomial::zero().is_odd_polynomial());
        assert!(UniPolynomial::zero().is_even_polynomial());
    }

    #[test]
    fn render_forms() {
        let p = UniPolynomial::from_coeffs(vec![frac(-1, 3), rat(0), rat(0), frac(1, 12)]);
        assert_eq!(p.render("k"), "(k^3 - 4)/12");
        assert_eq!(UniPolynomial::zero().render("k"), "0");
    }

    proptest! {
        /// Interpolation through random nodes reproduces every node exactly.
        #[test]
        fn interpolation_hits_all_nodes(
            xs in proptest::collection::btree_set(-30i64..30, 1..7),
            ys in proptest::collection::vec((-40i64..40, 1i64..12), 7),
        ) {
            let pts: Vec<(Rational, Rational)> = xs
                .iter()
                .zip(ys.iter())
                .map(|(&x, &(n, d))| (rat(x), frac(n, d)))
                .collect();
            let p = interpolate_univariate(&pts).unwrap();
            prop_assert!(p.degree().map_or(0, |d| d + 1) <= pts.len());
            for (x, y) in &pts {
                prop_assert_eq!(&p.eval(x), y);
            }
        }
    }
}
