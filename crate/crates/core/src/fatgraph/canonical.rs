//! Canonical forms and automorphism counting for fatgraphs.
//!
//! The canonical form is the minimum, over all choices of root dart, of a
//! deterministic breadth-first relabeling encoded as bytes. Because the
//! group generated by (tau0, tau1) acts transitively on darts, a labeled
//! automorphism is determined by the image of one dart, so the automorphism
//! group acts freely on darts; its order equals the multiplicity of the
//! minimal root encoding.

use super::{cycles_of, tau2_of, FatGraph};
use std::collections::BTreeSet;

/// Deterministic BFS relabeling seeded at `root`. Returns the encoding and
/// the `new_of_old` relabeling map.
fn encoding_from(
    tau0: &[usize],
    tau1: &[usize],
    labels: Option<&[usize]>,
    root: usize,
) -> (Vec<u8>, Vec<usize>) {
    let n = tau0.len();
    debug_assert!(n <= u8::MAX as usize + 1, "encoding uses one byte per dart");
    let mut new_of_old = vec![usize::MAX; n];
    let mut old_of_new = Vec::with_capacity(n);
    new_of_old[root] = 0;
    old_of_new.push(root);
    let mut k = 0;
    while k < old_of_new.len() {
        let d = old_of_new[k];
        for nb in [tau0[d], tau1[d]] {
            if new_of_old[nb] == usize::MAX {
                new_of_old[nb] = old_of_new.len();
                old_of_new.push(nb);
            }
        }
        k += 1;
    }
    debug_assert_eq!(old_of_new.len(), n, "graph must be connected");
    let mut enc = Vec::with_capacity(n * if labels.is_some() { 3 } else { 2 });
    for &old in &old_of_new {
        enc.push(new_of_old[tau0[old]] as u8);
        enc.push(new_of_old[tau1[old]] as u8);
        if let Some(lab) = labels {
            enc.push(lab[old] as u8);
        }
    }
    (enc, new_of_old)
}

/// Canonical byte string of a labeled fatgraph: equal strings exactly for
/// isomorphic labeled fatgraphs (bijections commuting with tau0 and tau1 and
/// preserving boundary labels).
pub fn canonical_form(graph: &FatGraph) -> Vec<u8> {
    let tau0 = graph.tau0_perm();
    let tau1 = graph.tau1_perm();
    let labels: Vec<usize> = (0..graph.n_darts()).map(|d| graph.label_of_dart(d)).collect();
    (0..graph.n_darts())
        .map(|root| encoding_from(tau0, tau1, Some(&labels), root).0)
        .min()
        .expect("nonempty dart set")
}

/// Order of the labeled automorphism group: permutations of the darts
/// commuting with tau0 and tau1 and acting trivially on the boundary cycles.
pub fn automorphism_count(graph: &FatGraph) -> u64 {
    let tau0 = graph.tau0_perm();
    let tau1 = graph.tau1_perm();
    let labels: Vec<usize> = (0..graph.n_darts()).map(|d| graph.label_of_dart(d)).collect();
    let encodings: Vec<Vec<u8>> = (0..graph.n_darts())
        .map(|root| encoding_from(tau0, tau1, Some(&labels), root).0)
        .collect();
    let min = encodings.iter().min().expect("nonempty dart set").clone();
    encodings.iter().filter(|e| **e == min) .count() as u64
}

/// Canonical data of an unlabeled fatgraph (no boundary labels): canonical
/// form, order of the full commutant of (tau0, tau1), and the group of
/// permutations that commutant induces on the boundary cycles (cycles in
/// min-dart order).
pub(crate) struct UnlabeledScan {
    pub canon: Vec<u8>,
    pub aut_order: u64,
    pub boundary_perms: Vec<Vec<usize>>,
}

pub(crate) fn unlabeled_scan(tau0: &[usize], tau1: &[usize]) -> UnlabeledScan {
    let n = tau0.len();
    let tau2 = tau2_of(tau0, tau1);
    let cycles = cycles_of(&tau2);
    let mut cycle_of_dart = vec![0usize; n];
    for (i, cycle) in cycles.iter().enumerate() {
        for &d in cycle {
            cycle_of_dart[d] = i;
        }
    }
    let scans: Vec<(Vec<u8>, Vec<usize>)> = (0..n)
        .map(|root| encoding_from(tau0, tau1, None, root))
        .collect();
    let min = scans.iter().map(|(e, _)| e).min().unwrap().clone();
    let reference = scans.iter().find(|(e, _)| *e == min).unwrap().1.clone();
    // The automorphism sending the reference root to root r maps old dart d
    // to old_of_new_r[reference[d]]; collect its action on boundary cycles.
    let mut perms: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut aut_order = 0u64;
    for (enc, new_of_old) in &scans {
        if *enc != min {
            continue;
        }
        aut_order += 1;
        let mut old_of_new = vec![0usize; n];
        for (old, &new) in new_of_old.iter().enumerate() {
            old_of_new[new] = old;
        }
        let mut perm = vec![0usize; cycles.len()];
        for (i, cycle) in cycles.iter().enumerate() {
            let image = old_of_new[reference[cycle[0]]];
            perm[i] = cycle_of_dart[image];
        }
        perms.insert(perm);
    }
    UnlabeledScan {
        canon: min,
        aut_order,
        boundary_perms: perms.into_iter().collect(),
    }
}
