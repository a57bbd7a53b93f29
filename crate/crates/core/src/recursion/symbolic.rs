//! Symbolic family construction: the recursion applied at the polynomial
//! level through parity kernels.
//!
//! For one distinguished variable b_1 (the pivot) the recursion reads
//!
//!   b_1 N_{g,n}(b) =
//!       sum_{j>1} 1/2 [ sum_{p+q=b_1+b_j} + sum_{p+q=b_1-b_j} ]
//!                    p q N_{g,n-1}(p, rest)
//!     + 1/2 sum_{p+q+r=b_1} p q r [ N_{g-1,n+1}(p,q,rest) + splittings ]
//!
//! Substituting the lower families monomial by monomial turns the inner sums
//! into kernel evaluations: pair kernels S_m at b_1 +- b_j (their odd
//! branches make the b_1 - b_j < 0 convention automatic) and triple kernels
//! at b_1, with the parities of p and q pinned by the parity class so the
//! right lower-class polynomial is selected. The accumulated polynomial is
//! odd in b_1 and even in the rest; dividing by b_1 must be exact, and the
//! quotient is the class polynomial in the squared variables.

use super::{is_stable, LatticeCountPolynomial};
use crate::algebra::{binomial_int, frac, Rational, SquarePolynomial};
use crate::error::{Error, Result};
use crate::kernels::{build_kernel, KernelId, Parity};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

type Lower = BTreeMap<(usize, usize), Arc<LatticeCountPolynomial>>;
type RawPoly = BTreeMap<Vec<u32>, Rational>;

/// Builds the (g,n) family from the lower families via the symmetry-broken
/// recursion, with variable 0 as the pivot.
pub fn symbolic_step(g: usize, n: usize, lower: &Lower) -> Result<LatticeCountPolynomial> {
    symbolic_step_with_pivot(g, n, lower, 0)
}

/// Same as [`symbolic_step`] with an explicit pivot variable; the result is
/// independent of the choice.
pub fn symbolic_step_with_pivot(
    g: usize,
    n: usize,
    lower: &Lower,
    pivot: usize,
) -> Result<LatticeCountPolynomial> {
    if !is_stable(g, n) || n == 0 {
        return Err(Error::Unstable { g, n });
    }
    if (g, n) == (0, 3) || (g, n) == (1, 1) {
        return Err(Error::InvalidArgument(
            "base cases (0,3) and (1,1) are not produced by the recursion".into(),
        ));
    }
    assert!(pivot < n);
    let degree = 3 * g + n - 3;
    let mut classes = BTreeMap::new();
    for odd_count in (0..=n).step_by(2) {
        let parities: Vec<u8> = (0..n).map(|s| u8::from(s < odd_count)).collect();
        let poly = symbolic_class(g, n, &parities, pivot, lower)?;
        if poly.total_degree() > degree {
            return Err(Error::Inconsistency(format!(
                "symbolic class {odd_count} of ({g},{n}) exceeds degree {degree}"
            )));
        }
        classes.insert(odd_count, poly);
    }
    LatticeCountPolynomial::new(g, n, classes)
}

fn get<'a>(lower: &'a Lower, g: usize, n: usize) -> Result<&'a LatticeCountPolynomial> {
    lower
        .get(&(g, n))
        .map(|arc| arc.as_ref())
        .ok_or_else(|| Error::InvalidArgument(format!("missing lower family ({g},{n})")))
}

/// The class polynomial of `family` with its variables rearranged to a given
/// argument order: `arg_pars[i]` is the parity (1 = odd) of argument i.
fn class_in_arg_order(
    family: &LatticeCountPolynomial,
    arg_pars: &[u8],
) -> SquarePolynomial {
    let odd_count = arg_pars.iter().filter(|&&p| p == 1).count();
    debug_assert!(odd_count % 2 == 0);
    let poly = family.class_or_zero(odd_count);
    // Canonical slot c holds the c-th odd argument for c < odd_count, then
    // the even arguments in order; perm sends each slot to its position.
    let mut perm = vec![0usize; arg_pars.len()];
    let mut next_odd = 0usize;
    let mut next_even = odd_count;
    for (pos, &par) in arg_pars.iter().enumerate() {
        let slot = if par == 1 {
            let s = next_odd;
            next_odd += 1;
            s
        } else {
            let s = next_even;
            next_even += 1;
            s
        };
        perm[slot] = pos;
    }
    poly.permute_vars(&perm)
}

fn add_raw(acc: &mut RawPoly, exps: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(exps) {
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

fn parity_of(bit: u8) -> Parity {
    if bit == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn symbolic_class(
    g: usize,
    n: usize,
    parities: &[u8],
    pivot: usize,
    lower: &Lower,
) -> Result<SquarePolynomial> {
    let mut acc: RawPoly = BTreeMap::new();
    let pivot_par = parities[pivot];

    // Pair terms: for each j, 1/2 [T(b_pivot + b_j) + T(b_pivot - b_j)]
    // expands to sum over odd t and even u of C(t,u) b_pivot^(t-u) b_j^u.
    if n >= 2 && is_stable(g, n - 1) {
        let child = get(lower, g, n - 1)?;
        for j in (0..n).filter(|&j| j != pivot) {
            let rest: Vec<usize> = (0..n).filter(|&s| s != pivot && s != j).collect();
            let rest_pars: Vec<u8> = rest.iter().map(|&s| parities[s]).collect();
            let p_par = (rest_pars.iter().map(|&p| p as u32).sum::<u32>() % 2) as u8;
            let k_par = (pivot_par + parities[j]) % 2;
            // q = (b_pivot +- b_j) - p is even exactly when the class total
            // is even, which holds for every stored class.
            debug_assert_eq!(p_par, k_par);
            let mut arg_pars = vec![p_par];
            arg_pars.extend_from_slice(&rest_pars);
            let cpoly = class_in_arg_order(child, &arg_pars);
            for (exps, coef) in cpoly.terms() {
                let kernel = build_kernel(&KernelId::Pair {
                    a: 2 * exps[0] + 1,
                    p: Parity::Free,
                    q: Parity::Even,
                })?;
                let branch = kernel.branch(k_par as i64);
                for (t, ct) in branch.terms() {
                    for u in (0..=t).step_by(2) {
                        let c = coef
                            * ct
                            * Rational::from_integer(binomial_int(t as u64, u as u64));
                        let mut e = vec![0u32; n];
                        e[pivot] += (t - u) as u32;
                        e[j] += u as u32;
                        for (idx, &s) in rest.iter().enumerate() {
                            e[s] += 2 * exps[1 + idx];
                        }
                        add_raw(&mut acc, e, c);
                    }
                }
            }
        }
    }

    // Triple terms carry the global 1/2.
    let half = frac(1, 2);
    let rest: Vec<usize> = (0..n).filter(|&s| s != pivot).collect();
    let rest_pars: Vec<u8> = rest.iter().map(|&s| parities[s]).collect();
    let rest_odd = (rest_pars.iter().map(|&p| p as u32).sum::<u32>() % 2) as u8;
    // (p,q) parity sub-cases with sp + sq = rest parity (mod 2), so the
    // child class has an even number of odd arguments.
    let sub_cases: [(u8, u8); 2] = if rest_odd == 0 {
        [(0, 0), (1, 1)]
    } else {
        [(0, 1), (1, 0)]
    };

    if g >= 1 && is_stable(g - 1, n + 1) {
        let child = get(lower, g - 1, n + 1)?;
        for &(sp, sq) in &sub_cases {
            let mut arg_pars = vec![sp, sq];
            arg_pars.extend_from_slice(&rest_pars);
            let cpoly = class_in_arg_order(child, &arg_pars);
            for (exps, coef) in cpoly.terms() {
                let kernel = build_kernel(&KernelId::Triple {
                    a: 2 * exps[0] + 1,
                    b: 2 * exps[1] + 1,
                    p: parity_of(sp),
                    q: parity_of(sq),
                    r: Parity::Free,
                })?;
                let branch = kernel.branch(pivot_par as i64);
                for (t, ct) in branch.terms() {
                    let c = &half * coef * ct;
                    let mut e = vec![0u32; n];
                    e[pivot] += t as u32;
                    for (idx, &s) in rest.iter().enumerate() {
                        e[s] += 2 * exps[2 + idx];
                    }
                    add_raw(&mut acc, e, c);
                }
            }
        }
    }

    // Splittings over ordered (g1, I) | (g2, J).
    for g1 in 0..=g {
        let g2 = g - g1;
        for mask in 0u32..(1 << rest.len()) {
            let left: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask & (1 << idx) != 0)
                .map(|(_, &s)| s)
                .collect();
            let right: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask & (1 << idx) == 0)
                .map(|(_, &s)| s)
                .collect();
            if !is_stable(g1, left.len() + 1) || !is_stable(g2, right.len() + 1) {
                continue;
            }
            let sp = (left.iter().map(|&s| parities[s] as u32).sum::<u32>() % 2) as u8;
            let sq = (right.iter().map(|&s| parities[s] as u32).sum::<u32>() % 2) as u8;
            let mut left_pars = vec![sp];
            left_pars.extend(left.iter().map(|&s| parities[s]));
            let mut right_pars = vec![sq];
            right_pars.extend(right.iter().map(|&s| parities[s]));
            let p1 = class_in_arg_order(get(lower, g1, left.len() + 1)?, &left_pars);
            let p2 = class_in_arg_order(get(lower, g2, right.len() + 1)?, &right_pars);
            for (e1, c1) in p1.terms() {
                for (e2, c2) in p2.terms() {
                    let kernel = build_kernel(&KernelId::Triple {
                        a: 2 * e1[0] + 1,
                        b: 2 * e2[0] + 1,
                        p: parity_of(sp),
                        q: parity_of(sq),
                        r: Parity::Free,
                    })?;
                    let branch = kernel.branch(pivot_par as i64);
                    for (t, ct) in branch.terms() {
                        let c = &half * c1 * c2 * ct;
                        let mut e = vec![0u32; n];
                        e[pivot] += t as u32;
                        for (idx, &s) in left.iter().enumerate() {
                            e[s] += 2 * e1[1 + idx];
                        }
                        for (idx, &s) in right.iter().enumerate() {
                            e[s] += 2 * e2[1 + idx];
                        }
                        add_raw(&mut acc, e, c);
                    }
                }
            }
        }
    }

    divide_by_pivot(acc, n, pivot, g)
}

/// Divides the accumulated polynomial (odd in the pivot, even elsewhere) by
/// the pivot variable and rewrites it in the squared variables. A nonzero
/// remainder signals a kernel or parity bookkeeping bug.
fn divide_by_pivot(acc: RawPoly, n: usize, pivot: usize, g: usize) -> Result<SquarePolynomial> {
    let mut out = SquarePolynomial::zero(n);
    for (e, c) in acc {
        if e[pivot] % 2 != 1 {
            return Err(Error::Inconsistency(format!(
                "division by b_{} leaves remainder: monomial {e:?} in genus {g} step",
                pivot + 1
            )));
        }
        if e.iter()
            .enumerate()
            .any(|(s, &x)| s != pivot && x % 2 != 0)
        {
            return Err(Error::Inconsistency(format!(
                "monomial {e:?} is not even in the non-pivot variables"
            )));
        }
        let mut half_exps = vec![0u32; n];
        for (s, &x) in e.iter().enumerate() {
            half_exps[s] = if s == pivot { (x - 1) / 2 } else { x / 2 };
        }
        out.add_term(half_exps, c);
    }
    Ok(out)
}

/// The Delta sum of the symmetry-breaking argument: over ordered pairs
/// (i, j), the b_i - b_j halves of the pair terms must cancel identically.
/// Returns true when the accumulated polynomial is exactly zero.
pub fn delta_cancellation_holds(
    g: usize,
    n: usize,
    odd_count: usize,
    lower: &Lower,
) -> Result<bool> {
    if n < 2 || !is_stable(g, n - 1) {
        return Ok(true);
    }
    let parities: Vec<u8> = (0..n).map(|s| u8::from(s < odd_count)).collect();
    let child = get(lower, g, n - 1)?;
    let mut acc: RawPoly = BTreeMap::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let rest: Vec<usize> = (0..n).filter(|&s| s != i && s != j).collect();
            let rest_pars: Vec<u8> = rest.iter().map(|&s| parities[s]).collect();
            let p_par = (rest_pars.iter().map(|&p| p as u32).sum::<u32>() % 2) as u8;
            let k_par = (parities[i] + parities[j]) % 2;
            let mut arg_pars = vec![p_par];
            arg_pars.extend_from_slice(&rest_pars);
            let cpoly = class_in_arg_order(child, &arg_pars);
            for (exps, coef) in cpoly.terms() {
                let kernel = build_kernel(&KernelId::Pair {
                    a: 2 * exps[0] + 1,
                    p: Parity::Free,
                    q: Parity::Even,
                })?;
                let branch = kernel.branch(k_par as i64);
                for (t, ct) in branch.terms() {
                    // Full binomial expansion of T(b_i - b_j), signs included.
                    for u in 0..=t {
                        let sign = if u % 2 == 0 { 1 } else { -1 };
                        let c = frac(sign, 2)
                            * coef
                            * ct
                            * Rational::from_integer(binomial_int(t as u64, u as u64));
                        let mut e = vec![0u32; n];
                        e[i] += (t - u) as u32;
                        e[j] += u as u32;
                        for (idx, &s) in rest.iter().enumerate() {
                            e[s] += 2 * exps[1 + idx];
                        }
                        add_raw(&mut acc, e, c);
                    }
                }
            }
        }
    }
    Ok(acc.is_empty())
}

#[cfg(test)]
mod tests {
    use super::super::provider::FamilyProvider;
    use super::*;
    use crate::algebra::{frac, rat};

    fn lower_for(g: usize, n: usize) -> Lower {
        let provider = FamilyProvider::new();
        provider.lower_families(g, n).unwrap()
    }

    #[test]
    fn four_punctured_sphere_even_class() {
        let family = symbolic_step(0, 4, &lower_for(0, 4)).unwrap();
        let mut expected = SquarePolynomial::zero(4);
        for v in 0..4 {
            let mut e = vec![0u32; 4];
            e[v] = 1;
            expected.add_term(e, frac(1, 4));
        }
        expected.add_term(vec![0; 4], rat(-1));
        assert_eq!(family.class(0).unwrap(), &expected);
    }

    #[test]
    fn torus_two_points_even_class() {
        let family = symbolic_step(1, 2, &lower_for(1, 2)).unwrap();
        // (x1+x2-4)(x1+x2-8)/384
        let mut s = SquarePolynomial::zero(2);
        s.add_term(vec![1, 0], rat(1));
        s.add_term(vec![0, 1], rat(1));
        let expected = s
            .add(&SquarePolynomial::constant(2, rat(-4)))
            .mul(&s.add(&SquarePolynomial::constant(2, rat(-8))))
            .scale(&frac(1, 384));
        assert_eq!(family.class(0).unwrap(), &expected);
    }

    #[test]
    fn genus_two_one_point() {
        let family = symbolic_step(2, 1, &lower_for(2, 1)).unwrap();
        // (x-4)(x-16)(x-36)(5x-32) / (2^16 3^3 5)
        let x = SquarePolynomial::monomial(1, vec![1], rat(1));
        let expected = x
            .add(&SquarePolynomial::constant(1, rat(-4)))
            .mul(&x.add(&SquarePolynomial::constant(1, rat(-16))))
            .mul(&x.add(&SquarePolynomial::constant(1, rat(-36))))
            .mul(&x.scale(&rat(5)).add(&SquarePolynomial::constant(1, rat(-32))))
            .scale(&frac(1, 8847360));
        assert_eq!(family.class(0).unwrap(), &expected);
    }

    #[test]
    fn pivot_independence() {
        let lower = lower_for(0, 5);
        let reference = symbolic_step_with_pivot(0, 5, &lower, 0).unwrap();
        for pivot in 1..5 {
            let other = symbolic_step_with_pivot(0, 5, &lower, pivot).unwrap();
            assert_eq!(other, reference, "pivot {pivot} disagrees");
        }
    }

    #[test]
    fn delta_vanishes() {
        for (g, n) in [(0usize, 4usize), (1, 2), (0, 5), (1, 3)] {
            let lower = lower_for(g, n);
            for odd_count in (0..=n).step_by(2) {
                assert!(delta_cancellation_holds(g, n, odd_count, &lower).unwrap());
            }
        }
    }
}
