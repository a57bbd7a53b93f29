//! Cross-checks of the recursion identity through the polynomial families.

use super::{recursion_rhs, FamilyProvider};
use crate::algebra::{frac, rat, Rational};
use crate::error::Result;

/// One failed sample: both sides of (sum b_i) N_{g,n}(b) = recursion RHS.
#[derive(Clone, Debug)]
pub struct VerifyFailure {
    pub g: usize,
    pub n: usize,
    pub b: Vec<u64>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Asserts that (sum b_i) N_{g,n}(b) equals the recursion right-hand side
/// with every value read from the polynomial families, exactly, at every
/// sample.
pub fn verify_recursion(
    provider: &FamilyProvider,
    samples: &[(usize, usize, Vec<u64>)],
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for (g, n, b) in samples {
        let family = provider.family(*g, *n)?;
        let total: u64 = b.iter().sum();
        let lhs = rat(total as i64) * family.eval_ints(b);
        let child = |cg: usize, cn: usize, cb: &[u64]| -> Result<Rational> {
            Ok(provider.family(cg, cn)?.eval_ints(cb))
        };
        let rhs = recursion_rhs(&child, *g, *n, b)?;
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(VerifyFailure {
                g: *g,
                n: *n,
                b: b.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// The special one-holed torus identity: b N_{1,1}(b) = 1/2 sum over
/// 2p + q = b (p, q >= 1) of p q, for even b.
pub fn n11_half_sum(b: u64) -> Rational {
    let mut acc = rat(0);
    let mut p = 1u64;
    while 2 * p < b {
        let q = b - 2 * p;
        acc += rat((p * q) as i64);
        p += 1;
    }
    acc * frac(1, 2)
}

#[cfg(test)]
mod tests {
    use super::super::base_n11;
    use super::*;

    #[test]
    fn recursion_identity_samples() {
        let provider = FamilyProvider::new();
        let samples = vec![
            (1usize, 2usize, vec![4u64, 2]),
            (0, 5, vec![2, 2, 2, 2, 2]),
            (0, 4, vec![1, 1, 2, 4]),
            (2, 1, vec![10]),
            (1, 3, vec![2, 4, 2]),
        ];
        let report = verify_recursion(&provider, &samples).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.checked, samples.len());
    }

    #[test]
    fn one_holed_torus_half_sum() {
        for b in (2..=20u64).step_by(2) {
            assert_eq!(rat(b as i64) * base_n11(b), n11_half_sum(b));
        }
    }
}
