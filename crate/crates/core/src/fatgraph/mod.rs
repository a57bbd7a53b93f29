//! Labeled fatgraphs as permutation pairs on oriented edges (darts).
//!
//! A fatgraph is a pair of permutations of the dart set X: tau0 cycles the
//! darts leaving each vertex (so vertices are tau0-cycles of length >= 3) and
//! tau1 is the fixed-point-free involution pairing the two orientations of
//! each edge. Boundary components are the cycles of tau2 = tau0 tau1, and a
//! labeled fatgraph carries a bijection from boundary cycles to 1..=n.
//!
//! Darts are 0-based indices internally; the text format uses 1-based names.

mod canonical;
mod enumerate;
mod text;

pub use canonical::{automorphism_count, canonical_form};
pub use enumerate::{census_by_edges, enumerate};
pub use text::{read_fatgraph, write_fatgraph};

use crate::error::{Error, Result};

/// A validated, connected, boundary-labeled fatgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FatGraph {
    tau0: Vec<usize>,
    tau1: Vec<usize>,
    /// Boundary label (1..=n) of the tau2-cycle through each dart.
    labels: Vec<usize>,
}

impl FatGraph {
    /// Builds and validates a fatgraph. `labels[d]` must be constant on each
    /// boundary cycle, and the labels must biject onto 1..=n.
    pub fn new(tau0: Vec<usize>, tau1: Vec<usize>, labels: Vec<usize>) -> Result<FatGraph> {
        validate_pair(&tau0, &tau1)?;
        let graph = FatGraph { tau0, tau1, labels };
        graph.validate_labels()?;
        Ok(graph)
    }

    /// Builds from a labeling of the boundary cycles in min-dart order:
    /// `cycle_labels[i]` is the label of the i-th boundary cycle when cycles
    /// are sorted by their smallest dart.
    pub fn from_cycle_labels(
        tau0: Vec<usize>,
        tau1: Vec<usize>,
        cycle_labels: &[usize],
    ) -> Result<FatGraph> {
        validate_pair(&tau0, &tau1)?;
        let cycles = cycles_of(&tau2_of(&tau0, &tau1));
        if cycles.len() != cycle_labels.len() {
            return Err(Error::BadBoundaryLabels { n: cycles.len() });
        }
        let mut labels = vec![0usize; tau0.len()];
        for (cycle, &label) in cycles.iter().zip(cycle_labels) {
            for &d in cycle {
                labels[d] = label;
            }
        }
        let graph = FatGraph { tau0, tau1, labels };
        graph.validate_labels()?;
        Ok(graph)
    }

    fn validate_labels(&self) -> Result<()> {
        let n = self.n_boundaries();
        let cycles = cycles_of(&self.tau2_perm());
        let mut seen = vec![false; n + 1];
        for cycle in &cycles {
            let label = self.labels[cycle[0]];
            if label == 0 || label > n || seen[label] {
                return Err(Error::BadBoundaryLabels { n });
            }
            seen[label] = true;
            if cycle.iter().any(|&d| self.labels[d] != label) {
                return Err(Error::BadBoundaryLabels { n });
            }
        }
        Ok(())
    }

    pub fn n_darts(&self) -> usize {
        self.tau0.len()
    }

    pub fn n_edges(&self) -> usize {
        self.tau0.len() / 2
    }

    pub fn n_vertices(&self) -> usize {
        cycles_of(&self.tau0).len()
    }

    pub fn n_boundaries(&self) -> usize {
        cycles_of(&self.tau2_perm()).len()
    }

    /// Genus from V - E + n = 2 - 2g.
    pub fn genus(&self) -> usize {
        let chi =
            self.n_vertices() as i64 - self.n_edges() as i64 + self.n_boundaries() as i64;
        ((2 - chi) / 2) as usize
    }

    pub fn tau0(&self, d: usize) -> usize {
        self.tau0[d]
    }

    pub fn tau1(&self, d: usize) -> usize {
        self.tau1[d]
    }

    pub fn tau2(&self, d: usize) -> usize {
        self.tau0[self.tau1[d]]
    }

    pub fn tau0_perm(&self) -> &[usize] {
        &self.tau0
    }

    pub fn tau1_perm(&self) -> &[usize] {
        &self.tau1
    }

    fn tau2_perm(&self) -> Vec<usize> {
        tau2_of(&self.tau0, &self.tau1)
    }

    pub fn label_of_dart(&self, d: usize) -> usize {
        self.labels[d]
    }

    /// Boundary cycles in label order (index i holds the cycle labeled i+1).
    /// Each cycle starts at its smallest dart.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_boundaries()];
        for cycle in cycles_of(&self.tau2_perm()) {
            let label = self.labels[cycle[0]];
            out[label - 1] = cycle;
        }
        out
    }

    /// Edges as dart pairs (d, tau1(d)) with d < tau1(d), sorted by d.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n_darts())
            .filter(|&d| d < self.tau1[d])
            .map(|d| (d, self.tau1[d]))
            .collect()
    }

    /// The n x E incidence matrix: entry (i, e) counts how often edge e lies
    /// on boundary i (0, 1 or 2). Rows follow boundary labels, columns the
    /// `edges()` order.
    pub fn incidence_matrix(&self) -> IncidenceSystem {
        let n = self.n_boundaries();
        let edges = self.edges();
        let mut matrix = vec![vec![0u32; edges.len()]; n];
        for (e, &(d1, d2)) in edges.iter().enumerate() {
            matrix[self.labels[d1] - 1][e] += 1;
            matrix[self.labels[d2] - 1][e] += 1;
        }
        IncidenceSystem { matrix }
    }

    /// Re-runs every structural invariant check.
    pub fn validate(&self) -> Result<()> {
        validate_pair(&self.tau0, &self.tau1)?;
        self.validate_labels()
    }
}

/// The incidence system A_Gamma: every column sums to exactly 2 because each
/// edge touches exactly two (not necessarily distinct) boundary sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSystem {
    pub matrix: Vec<Vec<u32>>,
}

impl IncidenceSystem {
    pub fn new(matrix: Vec<Vec<u32>>) -> IncidenceSystem {
        IncidenceSystem { matrix }
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn n_cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn column_sums(&self) -> Vec<u32> {
        let mut sums = vec![0u32; self.n_cols()];
        for row in &self.matrix {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }
}

/// Validates the permutation pair: equal even length, tau1 a fixed-point-free
/// involution, tau0 cycles of length >= 3, connected, integral genus.
fn validate_pair(tau0: &[usize], tau1: &[usize]) -> Result<()> {
    let n = tau0.len();
    if tau1.len() != n || !is_permutation(tau0) || !is_permutation(tau1) {
        return Err(Error::MalformedPermutation);
    }
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddDartCount);
    }
    for d in 0..n {
        if tau1[d] == d {
            return Err(Error::Tau1FixedPoint(d));
        }
        if tau1[tau1[d]] != d {
            return Err(Error::Tau1NotInvolution(d));
        }
    }
    for cycle in cycles_of(tau0) {
        if cycle.len() < 3 {
            return Err(Error::ShortVertexCycle {
                dart: cycle[0],
                len: cycle.len(),
            });
        }
    }
    if !is_connected(tau0, tau1) {
        return Err(Error::Disconnected);
    }
    let v = cycles_of(tau0).len() as i64;
    let e = (n / 2) as i64;
    let b = cycles_of(&tau2_of(tau0, tau1)).len() as i64;
    let chi = v - e + b;
    if chi > 2 || (2 - chi) % 2 != 0 {
        return Err(Error::BadGenus { chi });
    }
    Ok(())
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

pub(crate) fn tau2_of(tau0: &[usize], tau1: &[usize]) -> Vec<usize> {
    (0..tau0.len()).map(|d| tau0[tau1[d]]).collect()
}

/// Cycles of a permutation, each starting at its smallest element, sorted by
/// that element.
pub(crate) fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = perm[d];
        }
        cycles.push(cycle);
    }
    cycles
}

fn is_connected(tau0: &[usize], tau1: &[usize]) -> bool {
    // Transitivity of <tau0, tau1> via union-find.
    let mut parent: Vec<usize> = (0..tau0.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for d in 0..tau0.len() {
        for img in [tau0[d], tau1[d]] {
            let (a, b) = (find(&mut parent, d), find(&mut parent, img));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..tau0.len()).all(|d| find(&mut parent, d) == root)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn theta_types() {
        let theta = planar_theta();
        assert_eq!((theta.genus(), theta.n_boundaries()), (0, 3));
        let twisted = twisted_theta();
        assert_eq!((twisted.genus(), twisted.n_boundaries()), (1, 1));
    }

    #[test]
    fn boundary_cycle_counts() {
        assert_eq!(planar_theta().boundary_cycles().len(), 3);
        assert_eq!(twisted_theta().boundary_cycles().len(), 1);
        assert_eq!(genus1_figure8().boundary_cycles().len(), 1);
    }

    #[test]
    fn incidence_matrices() {
        let theta = planar_theta().incidence_matrix();
        // Up to labeling: each boundary meets two of the three edges once.
        let mut rows = theta.matrix.clone();
        rows.sort();
        assert_eq!(rows, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(theta.column_sums(), vec![2, 2, 2]);

        assert_eq!(twisted_theta().incidence_matrix().matrix, vec![vec![2, 2, 2]]);
        assert_eq!(genus1_figure8().incidence_matrix().matrix, vec![vec![2, 2]]);
    }

    #[test]
    fn fixed_point_tau1_rejected() {
        let err = FatGraph::from_cycle_labels(vec![1, 2, 0, 4, 5, 3], vec![0, 2, 1, 4, 3, 5], &[1])
            .unwrap_err();
        assert!(matches!(err, Error::Tau1FixedPoint(_)));
    }

    #[test]
    fn short_cycle_rejected() {
        // One 2-valent vertex.
        let err =
            FatGraph::from_cycle_labels(vec![1, 0, 3, 2], vec![2, 3, 0, 1], &[1, 2]).unwrap_err();
        assert!(matches!(err, Error::ShortVertexCycle { .. }));
    }

    #[test]
    fn disconnected_rejected() {
        // Two separate genus-1 figure-8s.
        let err = FatGraph::from_cycle_labels(
            vec![1, 2, 3, 0, 5, 6, 7, 4],
            vec![2, 3, 0, 1, 6, 7, 4, 5],
            &[1, 2],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Disconnected));
    }

    #[test]
    fn euler_relation_and_edge_bounds() {
        for graph in [
            planar_theta(),
            twisted_theta(),
            genus1_figure8(),
            planar_figure8(),
        ] {
            let (g, n, v, e) = (
                graph.genus(),
                graph.n_boundaries(),
                graph.n_vertices(),
                graph.n_edges(),
            );
            assert_eq!(v as i64 - e as i64 + n as i64, 2 - 2 * g as i64);
            // A connected graph with at least one vertex has E >= 2g+n-1,
            // and valency >= 3 forces E <= 6g-6+3n.
            assert!(e + 1 >= 2 * g + n);
            assert!(e <= (6 * g + 3 * n).saturating_sub(6));
        }
    }
}
