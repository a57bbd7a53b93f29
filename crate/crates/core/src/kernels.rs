//! Parity-restricted power-sum kernels.
//!
//! The symbolic recursion consumes sums of the shape
//!
//!   S_m(k)      = sum over p+q=k, q even       of p^(2m+1) q
//!   R_{m,m'}(k) = sum over p+q+r=k, r even     of p^(2m+1) q^(2m'+1) r
//!
//! (p, q, r positive integers) together with finer variants that pin the
//! parity of individual summation variables. Each such sum is, for each
//! parity of k, an odd polynomial in k of degree 2m+3 (pairs) resp.
//! 2m+2m'+5 (triples). Kernels are built by exact interpolation of
//! brute-force values and verified odd, with spare nodes as consistency
//! checks; evaluation at k <= 0 is polynomial evaluation, so the negation
//! convention S_m(-d) = -S_m(d) holds automatically.

use crate::algebra::{interpolate_univariate, rat, Rational, UniPolynomial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Parity constraint on one summation variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
    Free,
}

impl Parity {
    fn admits(self, v: u64) -> bool {
        match self {
            Parity::Even => v % 2 == 0,
            Parity::Odd => v % 2 == 1,
            Parity::Free => true,
        }
    }
}

/// Identifies a kernel: arity, odd exponents and per-variable parity
/// constraints. The summand is p^a q (pairs) or p^a q^b r (triples).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelId {
    Pair { a: u32, p: Parity, q: Parity },
    Triple { a: u32, b: u32, p: Parity, q: Parity, r: Parity },
}

impl KernelId {
    /// Degree bound from the lemma: a+2 for pairs, a+b+3 for triples.
    pub fn degree(&self) -> usize {
        match self {
            KernelId::Pair { a, .. } => *a as usize + 2,
            KernelId::Triple { a, b, .. } => (*a + *b) as usize + 3,
        }
    }

    fn brute(&self, k: u64) -> BigInt {
        match self {
            KernelId::Pair { a, p, q } => brute_pair_sum_constrained(*a, *p, *q, k),
            KernelId::Triple { a, b, p, q, r } => brute_triple_sum(*a, *b, *p, *q, *r, k),
        }
    }
}

/// A quasi-polynomial pair: one odd polynomial branch per parity of k.
#[derive(Clone, Debug)]
pub struct ParityKernel {
    pub id: KernelId,
    pub even_branch: UniPolynomial,
    pub odd_branch: UniPolynomial,
}

impl ParityKernel {
    /// Branch selected by the parity of k (also meaningful for k <= 0).
    pub fn branch(&self, k: i64) -> &UniPolynomial {
        if k.rem_euclid(2) == 0 {
            &self.even_branch
        } else {
            &self.odd_branch
        }
    }

    pub fn eval(&self, k: i64) -> Rational {
        self.branch(k).eval(&rat(k))
    }
}

/// Sum of p^a * q over p+q = k with p, q >= 1 and q of the given parity.
pub fn brute_pair_sum(a: u32, q_parity: Parity, k: u64) -> BigInt {
    brute_pair_sum_constrained(a, Parity::Free, q_parity, k)
}

/// Pair sum with parity constraints on both variables.
pub fn brute_pair_sum_constrained(a: u32, p_parity: Parity, q_parity: Parity, k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for p in 1..k {
        let q = k - p;
        if p_parity.admits(p) && q_parity.admits(q) {
            acc += BigInt::from(p).pow(a) * BigInt::from(q);
        }
    }
    acc
}

/// Sum of p^a * q^b * r over p+q+r = k (all >= 1) under the parity
/// constraints.
pub fn brute_triple_sum(
    a: u32,
    b: u32,
    p_parity: Parity,
    q_parity: Parity,
    r_parity: Parity,
    k: u64,
) -> BigInt {
    if k < 3 {
        return BigInt::zero();
    }
    // Power tables keep the double loop cheap for big exponents.
    let p_pows: Vec<BigInt> = (0..k).map(|p| BigInt::from(p).pow(a)).collect();
    let q_pows: Vec<BigInt> = (0..k).map(|q| BigInt::from(q).pow(b)).collect();
    let mut acc = BigInt::zero();
    for p in 1..=(k - 2) {
        if !p_parity.admits(p) {
            continue;
        }
        for q in 1..=(k - p - 1) {
            let r = k - p - q;
            if q_parity.admits(q) && r_parity.admits(r) {
                acc += &p_pows[p as usize] * &q_pows[q as usize] * BigInt::from(r);
            }
        }
    }
    acc
}

/// Builds (and caches) the kernel for an id. Branches are interpolated from
/// brute-force values at degree+2 nodes per parity; two spare nodes per
/// parity act as consistency checks, and both branches must come out odd.
pub fn build_kernel(id: &KernelId) -> Result<Arc<ParityKernel>> {
    static CACHE: Mutex<Option<HashMap<KernelId, Arc<ParityKernel>>>> = Mutex::new(None);
    {
        let mut guard = CACHE.lock().unwrap();
        if let Some(hit) = guard.get_or_insert_with(HashMap::new).get(id) {
            return Ok(hit.clone());
        }
    }
    let kernel = Arc::new(build_kernel_uncached(id)?);
    let mut guard = CACHE.lock().unwrap();
    let entry = guard
        .get_or_insert_with(HashMap::new)
        .entry(id.clone())
        .or_insert_with(|| kernel.clone());
    Ok(entry.clone())
}

fn build_kernel_uncached(id: &KernelId) -> Result<ParityKernel> {
    match id {
        KernelId::Pair { a, .. } if *a % 2 == 0 => {
            return Err(Error::InvalidArgument(format!(
                "pair kernel exponent must be odd, got {a}"
            )))
        }
        KernelId::Triple { a, b, .. } if *a % 2 == 0 || *b % 2 == 0 => {
            return Err(Error::InvalidArgument(format!(
                "triple kernel exponents must be odd, got ({a},{b})"
            )))
        }
        _ => {}
    }
    let deg = id.degree();
    let even = build_branch(id, deg, 2)?;
    let odd = build_branch(id, deg, 1)?;
    Ok(ParityKernel {
        id: id.clone(),
        even_branch: even,
        odd_branch: odd,
    })
}

fn build_branch(id: &KernelId, deg: usize, start: u64) -> Result<UniPolynomial> {
    let total = deg + 4; // deg+2 interpolation nodes, 2 validation nodes
    let ks: Vec<u64> = (0..total as u64).map(|i| start + 2 * i).collect();
    let fit_count = deg + 2;
    let nodes: Vec<(Rational, Rational)> = ks[..fit_count]
        .iter()
        .map(|&k| {
            (
                rat(k as i64),
                Rational::from_integer(id.brute(k)),
            )
        })
        .collect();
    let branch = interpolate_univariate(&nodes)?;
    for &k in &ks[fit_count..] {
        let expect = Rational::from_integer(id.brute(k));
        if branch.eval_int(k as i64) != expect {
            return Err(Error::Inconsistency(format!(
                "kernel {id:?} branch (start {start}) misses brute force at k = {k}"
            )));
        }
    }
    if !branch.is_odd_polynomial() {
        return Err(Error::Inconsistency(format!(
            "kernel {id:?} branch (start {start}) is not an odd polynomial"
        )));
    }
    if branch.degree().map_or(false, |d| d > deg) {
        return Err(Error::Inconsistency(format!(
            "kernel {id:?} branch (start {start}) exceeds degree {deg}"
        )));
    }
    Ok(branch)
}

/// Evaluates the parity-appropriate branch as a polynomial; k may be
/// negative or zero.
pub fn kernel_eval(kernel: &ParityKernel, k: i64) -> Rational {
    kernel.eval(k)
}

/// The pair kernel S_m: summand p^(2m+1) q with q even.
pub fn s_kernel(m: u32) -> Result<Arc<ParityKernel>> {
    build_kernel(&KernelId::Pair {
        a: 2 * m + 1,
        p: Parity::Free,
        q: Parity::Even,
    })
}

/// The triple kernel R_{m,m'}: summand p^(2m+1) q^(2m'+1) r with r even.
pub fn r_kernel(m: u32, mp: u32) -> Result<Arc<ParityKernel>> {
    build_kernel(&KernelId::Triple {
        a: 2 * m + 1,
        b: 2 * mp + 1,
        p: Parity::Free,
        q: Parity::Free,
        r: Parity::Even,
    })
}

/// Triple sub-kernel with the parities of p and q pinned (r free; its parity
/// is induced by k and the constraints).
pub fn r_subkernel(m: u32, mp: u32, p: Parity, q: Parity) -> Result<Arc<ParityKernel>> {
    build_kernel(&KernelId::Triple {
        a: 2 * m + 1,
        b: 2 * mp + 1,
        p,
        q,
        r: Parity::Free,
    })
}

/// Brute-force evaluation of a kernel id at k, as a Rational. Test oracle
/// helper; stays independent of the interpolation path.
pub fn brute_eval(id: &KernelId, k: u64) -> Rational {
    Rational::from_integer(id.brute(k))
}

#[allow(dead_code)]
fn _as_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("fits i64")
}
