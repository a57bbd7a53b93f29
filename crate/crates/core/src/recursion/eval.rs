//! Point evaluation of N_{g,n} by the recursion from N_{0,3} and N_{1,1}.
//!
//! The working form of the recursion, validated exactly against the known
//! closed forms, is
//!
//!   (sum b_i) N_{g,n}(b) =
//!       sum over unordered pairs {i,j} and p+q = b_i+b_j of
//!           p q N_{g,n-1}(p, b minus {b_i,b_j})
//!     + 1/2 sum over i and p+q+r = b_i of p q r times
//!           [ N_{g-1,n+1}(p, q, b minus {b_i})
//!             + sum over g_1+g_2 = g and ordered I ⊔ J = rest of
//!                 N_{g_1,|I|+1}(p, b_I) N_{g_2,|J|+1}(q, b_J) ]
//!
//! with terms that reference unstable (0,1) or (0,2) set to zero, and sums
//! over positive integer compositions. Parity constraints are implicit: the
//! lower-level vanishing kills wrong-parity terms whenever the total is even,
//! and odd totals return zero outright.

use crate::algebra::{frac, rat, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Mutex;

/// 2g - 2 + n > 0.
pub(crate) fn is_stable(g: usize, n: usize) -> bool {
    2 * (g as i64) - 2 + (n as i64) > 0
}

/// N_{0,3}(b1,b2,b3) = 1 when the total is even, else 0.
pub fn base_n03(b1: u64, b2: u64, b3: u64) -> Rational {
    if (b1 + b2 + b3) % 2 == 0 {
        rat(1)
    } else {
        rat(0)
    }
}

/// N_{1,1}(b) = (b^2 - 4)/48 for even b, else 0.
pub fn base_n11(b: u64) -> Rational {
    if b % 2 == 0 {
        frac(b as i64 * b as i64 - 4, 48)
    } else {
        rat(0)
    }
}

/// Memoized recursive evaluator. The memo key is the multiset of boundary
/// lengths (N_{g,n} is fully symmetric as a function); lookups and inserts
/// are idempotent, so concurrent use at worst recomputes a value.
pub struct Evaluator {
    memo: Mutex<HashMap<(usize, usize, Vec<u64>), Rational>>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Evaluator {
        Evaluator {
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// The value of N_{g,n}(b) for positive integer b.
    pub fn eval(&self, g: usize, n: usize, b: &[u64]) -> Result<Rational> {
        if !is_stable(g, n) || n == 0 {
            return Err(Error::Unstable { g, n });
        }
        if b.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} boundary lengths, got {}",
                b.len()
            )));
        }
        if b.iter().any(|&v| v == 0) {
            return Err(Error::InvalidArgument(
                "boundary lengths must be positive".into(),
            ));
        }
        if b.iter().sum::<u64>() % 2 != 0 {
            return Ok(Rational::zero());
        }
        match (g, n) {
            (0, 3) => return Ok(base_n03(b[0], b[1], b[2])),
            (1, 1) => return Ok(base_n11(b[0])),
            _ => {}
        }
        let mut key: Vec<u64> = b.to_vec();
        key.sort_unstable();
        {
            let memo = self.memo.lock().unwrap();
            if let Some(hit) = memo.get(&(g, n, key.clone())) {
                return Ok(hit.clone());
            }
        }
        let total: u64 = b.iter().sum();
        let rhs = recursion_rhs(&|g2, n2, b2| self.eval(g2, n2, b2), g, n, b)?;
        let value = rhs / rat(total as i64);
        self.memo
            .lock()
            .unwrap()
            .entry((g, n, key))
            .or_insert_with(|| value.clone());
        Ok(value)
    }
}

/// The right-hand side of the recursion, i.e. (sum b_i) N_{g,n}(b), with
/// lower-level values supplied by `child` (only called on stable types).
pub(crate) fn recursion_rhs<F>(child: &F, g: usize, n: usize, b: &[u64]) -> Result<Rational>
where
    F: Fn(usize, usize, &[u64]) -> Result<Rational>,
{
    let mut acc = Rational::zero();

    // Pair sum over unordered {i,j}.
    if n >= 2 && is_stable(g, n - 1) {
        for i in 0..n {
            for j in i + 1..n {
                let rest: Vec<u64> = (0..n)
                    .filter(|&s| s != i && s != j)
                    .map(|s| b[s])
                    .collect();
                let k = b[i] + b[j];
                let mut args = vec![0u64; n - 1];
                args[1..].copy_from_slice(&rest);
                for p in 1..k {
                    let q = k - p;
                    args[0] = p;
                    let v = child(g, n - 1, &args)?;
                    if !v.is_zero() {
                        acc += rat((p * q) as i64) * v;
                    }
                }
            }
        }
    }

    // Handle and splitting sums, weighted by 1/2.
    let mut second = Rational::zero();
    for i in 0..n {
        let rest: Vec<u64> = (0..n).filter(|&s| s != i).map(|s| b[s]).collect();
        let k = b[i];
        for p in 1..k {
            for q in 1..k.saturating_sub(p) {
                let r = k - p - q;
                let weight = rat((p * q * r) as i64);
                let mut term = Rational::zero();
                if g >= 1 && is_stable(g - 1, n + 1) {
                    let mut args = Vec::with_capacity(n + 1);
                    args.push(p);
                    args.push(q);
                    args.extend_from_slice(&rest);
                    term += child(g - 1, n + 1, &args)?;
                }
                for g1 in 0..=g {
                    let g2 = g - g1;
                    for mask in 0u32..(1 << rest.len()) {
                        let mut left = vec![p];
                        let mut right = vec![q];
                        for (idx, &v) in rest.iter().enumerate() {
                            if mask & (1 << idx) != 0 {
                                left.push(v);
                            } else {
                                right.push(v);
                            }
                        }
                        if !is_stable(g1, left.len()) || !is_stable(g2, right.len()) {
                            continue;
                        }
                        let v1 = child(g1, left.len(), &left)?;
                        if v1.is_zero() {
                            continue;
                        }
                        let v2 = child(g2, right.len(), &right)?;
                        term += v1 * v2;
                    }
                }
                if !term.is_zero() {
                    second += weight * term;
                }
            }
        }
    }
    acc += second * frac(1, 2);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert_eq!(base_n03(2, 2, 2), rat(1));
        assert_eq!(base_n03(1, 1, 2), rat(1));
        assert_eq!(base_n03(1, 2, 2), rat(0));
        assert_eq!(base_n11(2), rat(0));
        assert_eq!(base_n11(4), frac(1, 4));
        assert_eq!(base_n11(3), rat(0));
    }

    #[test]
    fn known_values() {
        let ev = Evaluator::new();
        assert_eq!(ev.eval(0, 4, &[2, 2, 2, 2]).unwrap(), rat(3));
        assert_eq!(ev.eval(1, 2, &[2, 2]).unwrap(), rat(0));
        assert_eq!(ev.eval(1, 2, &[4, 2]).unwrap(), frac(1, 2));
        assert_eq!(ev.eval(1, 2, &[4, 4]).unwrap(), frac(7, 4));
        assert_eq!(ev.eval(2, 1, &[8]).unwrap(), frac(21, 8));
    }

    #[test]
    fn odd_parity_vanishes() {
        let ev = Evaluator::new();
        assert_eq!(ev.eval(0, 4, &[1, 2, 2, 2]).unwrap(), rat(0));
        assert_eq!(ev.eval(2, 1, &[7]).unwrap(), rat(0));
    }

    #[test]
    fn full_symmetry() {
        let ev = Evaluator::new();
        let reference = ev.eval(0, 5, &[1, 3, 2, 2, 4]).unwrap();
        for perm in [
            [3u64, 1, 2, 4, 2],
            [2, 2, 4, 1, 3],
            [4, 3, 2, 2, 1],
        ] {
            assert_eq!(ev.eval(0, 5, &perm).unwrap(), reference);
        }
    }

    #[test]
    fn mixed_parity_value() {
        // Two odd arguments: N_{0,4} = (sum b_i^2 - 2)/4.
        let ev = Evaluator::new();
        assert_eq!(ev.eval(0, 4, &[1, 1, 2, 2]).unwrap(), rat(2));
        assert_eq!(ev.eval(1, 2, &[3, 3]).unwrap(), frac(1, 3));
    }

    #[test]
    fn errors() {
        let ev = Evaluator::new();
        assert!(matches!(ev.eval(0, 2, &[2, 2]), Err(Error::Unstable { .. })));
        assert!(ev.eval(1, 1, &[0]).is_err());
    }
}
