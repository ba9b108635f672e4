//! Plain graphs with bitset adjacency: link graphs and bipartite pieces.

use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Bitset::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(adj: Vec<Bitset>) -> Self {
        Graph { n: adj.len(), adj }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Lexicographically least triangle.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for x in 0..self.n {
            for y in self.adj[x].iter().filter(|&y| y > x) {
                let mut common = self.adj[x].intersection(&self.adj[y]);
                common.clear_up_to(y);
                if let Some(z) = common.first() {
                    return Some([x, y, z]);
                }
            }
        }
        None
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> u64 {
        let mut total = 0u64;
        for x in 0..self.n {
            for y in self.adj[x].iter().filter(|&y| y > x) {
                let mut common = self.adj[x].intersection(&self.adj[y]);
                common.clear_up_to(y);
                total += common.count() as u64;
            }
        }
        total
    }

    /// Lexicographically least `k`-clique, searched depth-first in increasing
    /// vertex order with a greedy-colouring bound for pruning.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let mut stack = Vec::with_capacity(k);
        let cand = Bitset::full(self.n);
        if self.clique_dfs(k, &mut stack, cand) {
            Some(stack)
        } else {
            None
        }
    }

    fn clique_dfs(&self, k: usize, stack: &mut Vec<usize>, cand: Bitset) -> bool {
        if stack.len() == k {
            return true;
        }
        let need = k - stack.len();
        if cand.count() < need || colour_bound(&self.adj, &cand) < need {
            return false;
        }
        for v in cand.iter() {
            let mut next = cand.intersection(&self.adj[v]);
            next.clear_up_to(v);
            stack.push(v);
            if self.clique_dfs(k, stack, next) {
                return true;
            }
            stack.pop();
        }
        false
    }
}

/// Greedy-colouring upper bound on the clique number of the subgraph induced
/// by `cand`.
pub(crate) fn colour_bound(adj: &[Bitset], cand: &Bitset) -> usize {
    let mut uncoloured = cand.clone();
    let mut colours = 0;
    while !uncoloured.is_empty() {
        colours += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            uncoloured.remove(v);
            avail.difference_with(&adj[v]);
        }
    }
    colours
}

/// Bipartite graph between a left side `0..left` and a right side `0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    rows: Vec<Bitset>,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            rows: vec![Bitset::new(right); left],
        }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            rows: vec![Bitset::full(right); left],
        }
    }

    pub fn from_edges(
        left: usize,
        right: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = BipartiteGraph::empty(left, right);
        for (x, y) in edges {
            if x >= left {
                return Err(Error::VertexOutOfRange { vertex: x, n: left });
            }
            if y >= right {
                return Err(Error::VertexOutOfRange {
                    vertex: y,
                    n: right,
                });
            }
            g.rows[x].insert(y);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(right: usize, rows: Vec<Bitset>) -> Self {
        BipartiteGraph {
            left: rows.len(),
            right,
            rows,
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &Bitset {
        &self.rows[x]
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum()
    }

    pub fn transpose(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph::empty(self.right, self.left);
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.iter() {
                t.rows[y].insert(x);
            }
        }
        t
    }

    /// Degree of each right vertex.
    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.right];
        for row in &self.rows {
            for y in row.iter() {
                d[y] += 1;
            }
        }
        d
    }
}

/// Serializable edge-list view of a graph.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn cliques_in_complete_graph() {
        let g = complete(6);
        assert_eq!(g.find_clique(4), Some(vec![0, 1, 2, 3]));
        assert_eq!(g.find_clique(7), None);
        assert_eq!(g.triangle_count(), 20);
    }

    #[test]
    fn five_cycle_has_no_triangle() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(g.find_triangle(), None);
        assert_eq!(g.find_clique(3), None);
        assert_eq!(g.find_clique(2), Some(vec![0, 1]));
    }

    #[test]
    fn colour_bound_is_an_upper_bound() {
        let g = complete(5);
        assert_eq!(colour_bound(&g.adj, &Bitset::full(5)), 5);
    }

    #[test]
    fn bipartite_transpose() {
        let b = BipartiteGraph::from_edges(2, 3, [(0, 2), (1, 0)]).unwrap();
        let t = b.transpose();
        assert!(t.has_edge(2, 0) && t.has_edge(0, 1));
        assert_eq!(t.edge_count(), 2);
        assert_eq!(b.right_degrees(), vec![1, 0, 1]);
    }
}
