//! Integer and rational special functions: factorials, binomials, Bernoulli
//! numbers and zeta(1-2g).

use super::{rat, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Integer binomial coefficient C(n, k).
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient C(x, k) = x(x-1)...(x-k+1)/k! for rational x.
pub fn binomial_rat(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - rat(i as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

fn bernoulli_uncached(m: u64) -> Rational {
    // B_0 = 1, B_1 = -1/2, and for m >= 1:
    //   sum_{j=0}^{m} C(m+1, j) B_j = 0
    // solved for B_m.
    let mut b: Vec<Rational> = Vec::with_capacity(m as usize + 1);
    b.push(Rational::one());
    for i in 1..=m {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial_int(i + 1, j as u64)) * bj;
        }
        let lead = Rational::from_integer(binomial_int(i + 1, i));
        b.push(-acc / lead);
    }
    b.pop().unwrap()
}

/// The m-th Bernoulli number for even m >= 2.
pub fn bernoulli(m: u64) -> Result<Rational> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "bernoulli(m) needs even m >= 2, got {m}"
        )));
    }
    static CACHE: Mutex<Option<HashMap<u64, Rational>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(v) = cache.get(&m) {
        return Ok(v.clone());
    }
    let v = bernoulli_uncached(m);
    cache.insert(m, v.clone());
    Ok(v)
}

/// zeta(1-2g) = -B_{2g}/(2g) for g >= 1.
pub fn zeta_negative(g: u64) -> Result<Rational> {
    if g < 1 {
        return Err(Error::InvalidArgument(format!(
            "zeta_negative(g) needs g >= 1, got {g}"
        )));
    }
    Ok(-bernoulli(2 * g)? / rat(2 * g as i64))
}
