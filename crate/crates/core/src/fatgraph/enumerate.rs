//! Exhaustive enumeration of labeled fatgraphs of type (g, n).
//!
//! For each edge count E and each vertex-valency cycle type, tau0 is frozen
//! to the canonical permutation with consecutive cycles and tau1 runs over
//! fixed-point-free involutions of the 2E darts. Connected pairs are bucketed
//! by their (genus, boundary count) and deduplicated by unlabeled canonical
//! form; labeled classes then come from orbits of boundary labelings under
//! the symmetries of the unlabeled graph.
//!
//! The search only needs to hit every isomorphism class at least once, so
//! dart 0's partner is restricted to one representative per orbit of the
//! centralizer of tau0: a within-cycle chord can be rotated to a gap of at
//! most half the cycle length, and a cross-cycle edge can be sent to the
//! first dart of the first other cycle of the partner's length.

use super::canonical::{automorphism_count, unlabeled_scan};
use super::{cycles_of, tau2_of, FatGraph};
use crate::algebra::{frac, Rational};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

/// One isomorphism class of unlabeled connected fatgraphs found by a scan.
struct ClassRecord {
    tau0: Vec<usize>,
    tau1: Vec<usize>,
    canon: Vec<u8>,
    aut_order: u64,
    boundary_perms: Vec<Vec<usize>>,
}

type ScanResult = HashMap<(usize, usize), Vec<ClassRecord>>;

/// Enumerates one representative per isomorphism class of labeled fatgraphs
/// of type (g, n) with all vertex valencies >= 3, together with the order of
/// each labeled automorphism group. Deterministic order; cached per (g, n).
pub fn enumerate(g: usize, n: usize) -> Result<Arc<Vec<(FatGraph, u64)>>> {
    if n == 0 || 2 * (g as i64) - 2 + n as i64 <= 0 {
        return Err(Error::Unstable { g, n });
    }
    static CACHE: Mutex<Option<HashMap<(usize, usize), Arc<Vec<(FatGraph, u64)>>>>> =
        Mutex::new(None);
    {
        let mut guard = CACHE.lock().unwrap();
        if let Some(hit) = guard.get_or_insert_with(HashMap::new).get(&(g, n)) {
            return Ok(hit.clone());
        }
    }

    let e_min = 2 * g + n - 1;
    let e_max = 6 * g + 3 * n - 6;
    // (graphs, sort key) collected across all edge counts and cycle types.
    let mut entries: Vec<((usize, Vec<u8>, Vec<usize>), FatGraph, u64)> = Vec::new();
    for e in e_min..=e_max {
        let v = (e + 2) as i64 - 2 * g as i64 - n as i64;
        if v < 1 || 3 * v > 2 * e as i64 {
            continue;
        }
        for lambda in partitions(2 * e, v as usize) {
            let scan = scan_cycle_type(&lambda);
            let Some(records) = scan.get(&(g, n)) else {
                continue;
            };
            for record in records {
                for labeling in labeling_orbit_reps(n, &record.boundary_perms) {
                    let graph = FatGraph::from_cycle_labels(
                        record.tau0.clone(),
                        record.tau1.clone(),
                        &labeling,
                    )?;
                    let aut = record.aut_order / record.boundary_perms.len() as u64;
                    debug_assert_eq!(aut, automorphism_count(&graph));
                    entries.push(((e, record.canon.clone(), labeling), graph, aut));
                }
            }
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let out = Arc::new(
        entries
            .into_iter()
            .map(|(_, graph, aut)| (graph, aut))
            .collect::<Vec<_>>(),
    );
    let mut guard = CACHE.lock().unwrap();
    let entry = guard
        .get_or_insert_with(HashMap::new)
        .entry((g, n))
        .or_insert_with(|| out.clone());
    Ok(entry.clone())
}

/// Weighted census: sum of 1/|Aut| over labeled classes, keyed by edge count.
pub fn census_by_edges(g: usize, n: usize) -> Result<BTreeMap<usize, Rational>> {
    let mut out = BTreeMap::new();
    for (graph, aut) in enumerate(g, n)?.iter() {
        *out.entry(graph.n_edges())
            .or_insert_with(|| frac(0, 1)) += frac(1, *aut as i64);
    }
    Ok(out)
}

/// Descending partitions of `total` into exactly `parts` parts, each >= 3.
fn partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let hi = max.min(total.saturating_sub(3 * (parts - 1)));
        for part in (3..=hi).rev() {
            prefix.push(part);
            rec(total - part, parts - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// Scans all matchings for the fixed tau0 of the given cycle type, returning
/// unlabeled classes bucketed by (genus, boundary count). Cached per type.
fn scan_cycle_type(lambda: &[usize]) -> Arc<ScanResult> {
    static CACHE: Mutex<Option<HashMap<Vec<usize>, Arc<ScanResult>>>> = Mutex::new(None);
    {
        let mut guard = CACHE.lock().unwrap();
        if let Some(hit) = guard.get_or_insert_with(HashMap::new).get(lambda) {
            return hit.clone();
        }
    }
    let result = Arc::new(scan_cycle_type_uncached(lambda));
    let mut guard = CACHE.lock().unwrap();
    let entry = guard
        .get_or_insert_with(HashMap::new)
        .entry(lambda.to_vec())
        .or_insert_with(|| result.clone());
    entry.clone()
}

fn scan_cycle_type_uncached(lambda: &[usize]) -> ScanResult {
    let n_darts: usize = lambda.iter().sum();
    let mut tau0 = vec![0usize; n_darts];
    let mut start = 0;
    let mut cycle_starts = Vec::with_capacity(lambda.len());
    for &len in lambda {
        cycle_starts.push(start);
        for i in 0..len {
            tau0[start + i] = start + (i + 1) % len;
        }
        start += len;
    }

    // Representative partners for dart 0 under the centralizer of tau0.
    let mut dart0_candidates: Vec<usize> = (1..=lambda[0] / 2).collect();
    for j in 1..lambda.len() {
        if lambda[j] != lambda[j - 1] || j == 1 {
            dart0_candidates.push(cycle_starts[j]);
        }
    }

    let mut buckets: ScanResult = HashMap::new();
    let mut seen: HashMap<(usize, usize), HashSet<Vec<u8>>> = HashMap::new();
    let mut partner = vec![usize::MAX; n_darts];
    for &first in &dart0_candidates {
        partner[0] = first;
        partner[first] = 0;
        fill_matchings(&tau0, &mut partner, &mut buckets, &mut seen);
        partner[0] = usize::MAX;
        partner[first] = usize::MAX;
    }
    buckets
}

fn fill_matchings(
    tau0: &[usize],
    partner: &mut Vec<usize>,
    buckets: &mut ScanResult,
    seen: &mut HashMap<(usize, usize), HashSet<Vec<u8>>>,
) {
    let Some(d) = partner.iter().position(|&p| p == usize::MAX) else {
        record_leaf(tau0, partner, buckets, seen);
        return;
    };
    for other in d + 1..partner.len() {
        if partner[other] == usize::MAX {
            partner[d] = other;
            partner[other] = d;
            fill_matchings(tau0, partner, buckets, seen);
            partner[d] = usize::MAX;
            partner[other] = usize::MAX;
        }
    }
}

fn record_leaf(
    tau0: &[usize],
    tau1: &[usize],
    buckets: &mut ScanResult,
    seen: &mut HashMap<(usize, usize), HashSet<Vec<u8>>>,
) {
    if !connected(tau0, tau1) {
        return;
    }
    let n_darts = tau0.len();
    let boundaries = cycles_of(&tau2_of(tau0, tau1)).len();
    let vertices = cycles_of(tau0).len();
    let chi = vertices as i64 - (n_darts / 2) as i64 + boundaries as i64;
    debug_assert!(chi <= 2 && (2 - chi) % 2 == 0);
    let genus = ((2 - chi) / 2) as usize;
    let scan = unlabeled_scan(tau0, tau1);
    let key = (genus, boundaries);
    if seen.entry(key).or_default().insert(scan.canon.clone()) {
        buckets.entry(key).or_default().push(ClassRecord {
            tau0: tau0.to_vec(),
            tau1: tau1.to_vec(),
            canon: scan.canon,
            aut_order: scan.aut_order,
            boundary_perms: scan.boundary_perms,
        });
    }
}

fn connected(tau0: &[usize], tau1: &[usize]) -> bool {
    let n = tau0.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(d) = stack.pop() {
        for nb in [tau0[d], tau1[d]] {
            if !seen[nb] {
                seen[nb] = true;
                count += 1;
                stack.push(nb);
            }
        }
    }
    count == n
}

/// Lexicographically minimal representatives of labelings (bijections from
/// boundary cycles to 1..=n) under the induced symmetry group.
fn labeling_orbit_reps(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut reps = Vec::new();
    let mut labeling: Vec<usize> = (1..=n).collect();
    loop {
        // labeling[cycle] = label; composing with a symmetry relabels cycles.
        let minimal = perms.iter().all(|perm| {
            let image: Vec<usize> = (0..n).map(|c| labeling[perm[c]]).collect();
            labeling <= image
        });
        if minimal {
            reps.push(labeling.clone());
        }
        if !next_permutation(&mut labeling) {
            break;
        }
    }
    reps
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use crate::fatgraph::canonical_form;

    #[test]
    fn fat03_has_seven_labeled_classes() {
        let classes = enumerate(0, 3).unwrap();
        assert_eq!(classes.len(), 7);
        // All labeled automorphism groups are trivial here.
        assert!(classes.iter().all(|(_, aut)| *aut == 1));
    }

    #[test]
    fn fat11_weights() {
        let classes = enumerate(1, 1).unwrap();
        let mut weights: Vec<(usize, u64)> = classes
            .iter()
            .map(|(graph, aut)| (graph.n_edges(), *aut))
            .collect();
        weights.sort();
        assert_eq!(weights, vec![(2, 4), (3, 6)]);
    }

    #[test]
    fn fat12_census_edge_range() {
        // Edge counts span 3..=6: the floor E = 2g+n-1 = 3 is the one-vertex
        // graph with a single 6-valent vertex.
        let census = census_by_edges(1, 2).unwrap();
        assert_eq!(census.keys().cloned().collect::<Vec<_>>(), vec![3, 4, 5, 6]);
    }

    #[test]
    fn canonical_forms_pairwise_distinct() {
        for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2)] {
            let classes = enumerate(g, n).unwrap();
            let mut forms: Vec<Vec<u8>> =
                classes.iter().map(|(graph, _)| canonical_form(graph)).collect();
            let total = forms.len();
            forms.sort();
            forms.dedup();
            assert_eq!(forms.len(), total, "duplicate class in ({g},{n})");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate(0, 4).unwrap();
        let b = enumerate(0, 4).unwrap();
        assert_eq!(a.len(), b.len());
        for ((g1, a1), (g2, a2)) in a.iter().zip(b.iter()) {
            assert_eq!(g1, g2);
            assert_eq!(a1, a2);
        }
    }

    #[test]
    fn euler_relation_and_column_sums_hold() {
        for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2)] {
            for (graph, _) in enumerate(g, n).unwrap().iter() {
                assert_eq!(graph.genus(), g);
                assert_eq!(graph.n_boundaries(), n);
                let e = graph.n_edges();
                assert!(e + 1 >= 2 * g + n && e <= 6 * g + 3 * n - 6);
                let inc = graph.incidence_matrix();
                assert!(inc.column_sums().iter().all(|&s| s == 2));
            }
        }
    }

    #[test]
    fn unstable_rejected() {
        assert!(enumerate(0, 2).is_err());
        assert!(enumerate(0, 1).is_err());
    }

    #[test]
    fn genus1_one_boundary_census_matches_closed_forms() {
        // c_3^{(1)} = 1/6 (trivalent) and c_2^{(1)} = 1/4 (one vertex).
        let census = census_by_edges(1, 1).unwrap();
        assert_eq!(census[&3], frac(1, 6));
        assert_eq!(census[&2], frac(1, 4));
        let total: Rational = census.values().cloned().sum();
        assert_eq!(total, frac(5, 12));
    }

    #[test]
    fn partitions_generate_expected_types() {
        assert_eq!(partitions(6, 2), vec![vec![3, 3]]);
        assert_eq!(
            partitions(12, 3),
            vec![vec![6, 3, 3], vec![5, 4, 3], vec![4, 4, 4]]
        );
        assert!(partitions(7, 3).is_empty());
    }
}
