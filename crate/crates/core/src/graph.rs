//! Small simple graphs on vertices `0..n` with bit-row adjacency.

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Edgeless graph with the given vertex labels.
    pub fn new(labels: Vec<String>) -> Graph {
        let n = labels.len();
        Graph { labels, adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect() }
    }

    /// Vertices labelled `v0..v{n-1}`.
    pub fn with_vertices(n: usize) -> Graph {
        Graph::new((0..n).map(|i| format!("v{i}")).collect())
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Graph {
        let mut g = Graph::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        Graph::from_edges(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "simple graphs have no loops");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count()).flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    /// An edge inside `set`, if any.
    pub fn edge_within(&self, set: &[usize]) -> Option<(usize, usize)> {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.adjacent(u, v) {
                    return Some((u.min(v), u.max(v)));
                }
            }
        }
        None
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.edge_within(set).is_none()
    }

    /// A vertex outside `set` with no neighbor in `set` (so `set` is not maximal).
    pub fn unblocked_vertex(&self, set: &[usize]) -> Option<usize> {
        let mask = self.mask(set);
        (0..self.vertex_count()).find(|&v| !mask.contains(v) && self.adj[v].is_disjoint(&mask))
    }

    pub fn is_maximal_independent(&self, set: &[usize]) -> bool {
        self.is_independent(set) && self.unblocked_vertex(set).is_none()
    }

    /// An edge with no endpoint in `set`, if any.
    pub fn uncovered_edge(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mask = self.mask(set);
        self.edges().into_iter().find(|&(u, v)| !mask.contains(u) && !mask.contains(v))
    }

    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        self.uncovered_edge(set).is_none()
    }

    /// A member of the cover `set` that can be dropped while still covering every edge.
    pub fn redundant_cover_vertex(&self, set: &[usize]) -> Option<usize> {
        let mask = self.mask(set);
        // `v` is needed iff some neighbor of `v` lies outside the cover.
        set.iter().copied().find(|&v| self.adj[v].is_subset(&mask))
    }

    pub fn is_minimal_vertex_cover(&self, set: &[usize]) -> bool {
        self.is_vertex_cover(set) && self.redundant_cover_vertex(set).is_none()
    }

    pub fn mask(&self, set: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.vertex_count());
        for &v in set {
            m.insert(v);
        }
        m
    }

    /// Relabels vertex `v` as `perm[v]`, keeping labels attached to their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let mut g = Graph::new(labels);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_and_independence_on_a_path() {
        let g = Graph::path(3);
        assert!(g.is_maximal_independent(&[0, 2]));
        assert!(g.is_maximal_independent(&[1]));
        assert!(!g.is_maximal_independent(&[0]));
        assert!(g.is_minimal_vertex_cover(&[1]));
        assert!(g.is_vertex_cover(&[0, 1]));
        assert!(!g.is_minimal_vertex_cover(&[0, 1]));
        assert_eq!(g.uncovered_edge(&[0]), Some((1, 2)));
    }

    #[test]
    fn counts() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::complete_bipartite(2, 3).edge_count(), 6);
        assert_eq!(Graph::complete(3).edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }
}
