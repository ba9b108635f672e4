//! 3- and 4-uniform hypergraphs on the ordered vertex set `0..n`.
//!
//! Edges are kept twice: as a lexicographically sorted list (iteration,
//! serialization) and as bitset rows indexed by the sub-tuples of an edge
//! (`link_row(u, v)` for 3-graphs, `triple_row(a, b, c)` for 4-graphs), which
//! is what the detectors and certifiers scan.

use serde::Serialize;

use crate::bitset::{intersection_count, words_for, Bitset};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{binom, rat, serialize_rational, to_f64, Rational};

/// Largest supported vertex count for 3-uniform hypergraphs.
pub const MAX_N3: usize = 4096;
/// Largest supported vertex count for 4-uniform hypergraphs.
pub const MAX_N4: usize = 512;

#[inline]
pub(crate) fn pair_rank(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

#[inline]
pub(crate) fn triple_rank(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c);
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

#[inline]
fn sort2(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[inline]
fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

pub(crate) fn vertex_set(n: usize, vertices: &[usize]) -> Result<Bitset> {
    let mut set = Bitset::new(n);
    for &v in vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        set.insert(v);
    }
    Ok(set)
}

/// Edge count with its density against the number of possible edges.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub edge_count: u64,
    pub possible: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub exact: Rational,
    pub value: f64,
}

impl DensityReport {
    pub fn new(edge_count: u64, possible: u64) -> Self {
        let exact = if possible == 0 {
            rat(0, 1)
        } else {
            rat(edge_count as i128, possible as i128)
        };
        DensityReport {
            edge_count,
            possible,
            value: to_f64(&exact),
            exact,
        }
    }
}

/// A 3-uniform hypergraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<[u32; 3]>,
    wpr: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph3 {
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// The complete 3-graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    edges.push([a as u32, b as u32, c as u32]);
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    /// Builds from arbitrary triples; rejects repeated vertices, out-of-range
    /// vertices and duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        check_cap(n, MAX_N3)?;
        let mut list = Vec::new();
        for e in edges {
            for &v in &e {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            let [a, b, c] = sort3(e);
            if a == b || b == c {
                return Err(Error::invalid(format!("edge {e:?} repeats a vertex")));
            }
            list.push([a as u32, b as u32, c as u32]);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Self::from_sorted_unique(n, list)
    }

    /// Trusted constructor: `edges` must be sorted, unique, with increasing
    /// vertices inside each triple.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<[u32; 3]>) -> Result<Self> {
        check_cap(n, MAX_N3)?;
        let wpr = words_for(n);
        let pairs = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; pairs * wpr];
        for e in &edges {
            let [a, b, c] = e.map(|x| x as usize);
            debug_assert!(a < b && b < c && c < n);
            for (u, v, w) in [(a, b, c), (a, c, b), (b, c, a)] {
                rows[pair_rank(u, v) * wpr + (w >> 6)] |= 1u64 << (w & 63);
            }
        }
        Ok(Hypergraph3 {
            n,
            edges,
            wpr,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges with increasing vertices, sorted lexicographically.
    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    pub fn edge_iter(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.edges.iter().map(|e| e.map(|x| x as usize))
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.wpr
    }

    /// Words of the link row of the pair `{u, v}`: every `w` with `{u,v,w}`
    /// an edge.
    #[inline]
    pub fn link_row(&self, u: usize, v: usize) -> &[u64] {
        let (u, v) = sort2(u, v);
        let r = pair_rank(u, v) * self.wpr;
        &self.rows[r..r + self.wpr]
    }

    pub fn link_set(&self, u: usize, v: usize) -> Bitset {
        Bitset::from_indices(self.n, crate::bitset::ones(self.link_row(u, v)))
    }

    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        if a >= self.n || b >= self.n || c >= self.n || a == b || a == c || b == c {
            return false;
        }
        (self.link_row(a, b)[c >> 6] >> (c & 63)) & 1 == 1
    }

    pub fn density(&self) -> DensityReport {
        DensityReport::new(self.edges.len() as u64, binom(self.n as u64, 3))
    }

    /// Number of edges contained in `u`.
    pub fn count_e_u(&self, u: &[usize]) -> Result<u64> {
        let set = vertex_set(self.n, u)?;
        Ok(self.count_in_set(&set))
    }

    pub(crate) fn count_in_set(&self, set: &Bitset) -> u64 {
        let verts = set.to_vec();
        let mut total = 0u64;
        for (i, &x) in verts.iter().enumerate() {
            for &y in &verts[i + 1..] {
                total += intersection_count(self.link_row(x, y), set.words()) as u64;
            }
        }
        total / 3
    }

    /// Ordered triples `(x, y, z)` in `X × Y × Z` whose underlying set is an
    /// edge. The three sets may overlap.
    pub fn count_e_xyz(&self, x: &[usize], y: &[usize], z: &[usize]) -> Result<u64> {
        let xs = vertex_set(self.n, x)?;
        let ys = vertex_set(self.n, y)?;
        let zs = vertex_set(self.n, z)?;
        Ok(self.count_xyz_sets(&xs, &ys, &zs))
    }

    pub(crate) fn count_xyz_sets(&self, xs: &Bitset, ys: &Bitset, zs: &Bitset) -> u64 {
        let mut total = 0u64;
        for a in xs.iter() {
            for b in ys.iter().filter(|&b| b != a) {
                total += intersection_count(self.link_row(a, b), zs.words()) as u64;
            }
        }
        total
    }

    /// Link graph of `a`: `{u, v}` is an edge iff `{a, u, v}` is a hyperedge.
    /// The graph keeps all `n` vertex labels; `a` itself is isolated.
    pub fn link_graph(&self, a: usize) -> Result<Graph> {
        if a >= self.n {
            return Err(Error::VertexOutOfRange { vertex: a, n: self.n });
        }
        let rows = (0..self.n)
            .map(|u| {
                if u == a {
                    Bitset::new(self.n)
                } else {
                    self.link_set(a, u)
                }
            })
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Sub-hypergraph induced by `u`, relabelled `0..|u|` in increasing order.
    pub fn induced(&self, u: &[usize]) -> Result<Hypergraph3> {
        let set = vertex_set(self.n, u)?;
        let verts = set.to_vec();
        let mut relabel = vec![u32::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            relabel[v] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&x| set.contains(x as usize)))
            .map(|e| e.map(|x| relabel[x as usize]))
            .collect();
        Hypergraph3::from_sorted_unique(verts.len(), edges)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "vertex count",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// A 4-uniform hypergraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph4 {
    n: usize,
    edges: Vec<[u32; 4]>,
    wpr: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Hypergraph4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypergraph4")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph4 {
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        edges.push([a as u32, b as u32, c as u32, d as u32]);
                    }
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 4]>,
    {
        check_cap(n, MAX_N4)?;
        let mut list = Vec::new();
        for mut e in edges {
            for &v in &e {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("edge {e:?} repeats a vertex")));
            }
            list.push(e.map(|x| x as u32));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Self::from_sorted_unique(n, list)
    }

    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<[u32; 4]>) -> Result<Self> {
        check_cap(n, MAX_N4)?;
        let wpr = words_for(n);
        let triples = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
        let mut rows = vec![0u64; triples * wpr];
        for e in &edges {
            let [a, b, c, d] = e.map(|x| x as usize);
            debug_assert!(a < b && b < c && c < d && d < n);
            for (t, w) in [
                ((a, b, c), d),
                ((a, b, d), c),
                ((a, c, d), b),
                ((b, c, d), a),
            ] {
                rows[triple_rank(t.0, t.1, t.2) * wpr + (w >> 6)] |= 1u64 << (w & 63);
            }
        }
        Ok(Hypergraph4 {
            n,
            edges,
            wpr,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[u32; 4]] {
        &self.edges
    }

    pub fn edge_iter(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        self.edges.iter().map(|e| e.map(|x| x as usize))
    }

    /// Words of the row of `{a, b, c}`: every `d` with `{a,b,c,d}` an edge.
    #[inline]
    pub fn triple_row(&self, a: usize, b: usize, c: usize) -> &[u64] {
        let [a, b, c] = sort3([a, b, c]);
        let r = triple_rank(a, b, c) * self.wpr;
        &self.rows[r..r + self.wpr]
    }

    pub fn has_edge(&self, e: [usize; 4]) -> bool {
        let mut s = e;
        s.sort_unstable();
        if s[3] >= self.n || s.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        (self.triple_row(s[0], s[1], s[2])[s[3] >> 6] >> (s[3] & 63)) & 1 == 1
    }

    pub fn density(&self) -> DensityReport {
        DensityReport::new(self.edges.len() as u64, binom(self.n as u64, 4))
    }

    /// Link graph of the pair `{u, v}`: `{x, y}` is an edge iff `{u,v,x,y}`
    /// is a hyperedge. `u` and `v` are isolated.
    pub fn pair_link(&self, u: usize, v: usize) -> Result<Graph> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::invalid("pair link needs two distinct vertices"));
        }
        let rows = (0..self.n)
            .map(|x| {
                if x == u || x == v {
                    Bitset::new(self.n)
                } else {
                    Bitset::from_indices(self.n, crate::bitset::ones(self.triple_row(u, v, x)))
                }
            })
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Number of edges inside `u`.
    pub fn count_e_u(&self, u: &[usize]) -> Result<u64> {
        let set = vertex_set(self.n, u)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&x| set.contains(x as usize)))
            .count() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_are_dense() {
        let mut seen = Vec::new();
        for v in 0..6 {
            for u in 0..v {
                seen.push(pair_rank(u, v));
            }
        }
        seen.sort();
        assert_eq!(seen, (0..15).collect::<Vec<_>>());
        let mut seen = Vec::new();
        for c in 0..7 {
            for b in 0..c {
                for a in 0..b {
                    seen.push(triple_rank(a, b, c));
                }
            }
        }
        seen.sort();
        assert_eq!(seen, (0..35).collect::<Vec<_>>());
    }

    #[test]
    fn complete_counts() {
        let h = Hypergraph3::complete(6).unwrap();
        assert_eq!(h.count_e_u(&[0, 2, 3, 5]).unwrap(), 4);
        // z ranges over {0,1,5} minus x
        assert_eq!(h.count_e_xyz(&[0, 1], &[2, 3, 4], &[5, 1, 0]).unwrap(), 12);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(h.count_e_xyz(&all, &all, &all).unwrap(), 6 * 5 * 4);
    }

    #[test]
    fn disjoint_xyz_product() {
        let h = Hypergraph3::complete(9).unwrap();
        assert_eq!(h.count_e_xyz(&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]).unwrap(), 24);
    }

    #[test]
    fn single_edge_xyz() {
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(h.count_e_xyz(&[0], &[1], &[1, 2]).unwrap(), 1);
    }

    #[test]
    fn empty_counts() {
        let h = Hypergraph3::empty(7).unwrap();
        assert_eq!(h.count_e_u(&[0, 1, 2, 3]).unwrap(), 0);
        assert_eq!(h.link_graph(3).unwrap().edge_count(), 0);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let h = Hypergraph3::complete(4).unwrap();
        assert!(matches!(
            h.count_e_u(&[0, 4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
        assert!(h.count_e_xyz(&[0], &[9], &[1]).is_err());
        assert!(h.link_graph(4).is_err());
        assert!(Hypergraph3::from_edges(3, [[0, 1, 3]]).is_err());
        assert!(Hypergraph3::from_edges(3, [[0, 1, 1]]).is_err());
        assert!(Hypergraph3::from_edges(3, [[0, 1, 2], [2, 1, 0]]).is_err());
    }

    #[test]
    fn size_caps() {
        assert!(matches!(
            Hypergraph3::empty(MAX_N3 + 1),
            Err(Error::TooLarge { .. })
        ));
        assert!(Hypergraph4::empty(MAX_N4 + 1).is_err());
    }

    #[test]
    fn link_of_complete_is_complete() {
        let h = Hypergraph3::complete(5).unwrap();
        let g = h.link_graph(0).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn induced_relabels() {
        let h = Hypergraph3::complete(6).unwrap();
        assert_eq!(h.induced(&[1, 3, 4, 5]).unwrap(), Hypergraph3::complete(4).unwrap());
        let single = Hypergraph3::from_edges(4, [[0, 1, 2]]).unwrap();
        let ind = single.induced(&[0, 1, 3]).unwrap();
        assert_eq!(ind.n(), 3);
        assert_eq!(ind.edge_count(), 0);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(h.induced(&all).unwrap(), h);
    }

    #[test]
    fn four_uniform_rows_and_links() {
        let h = Hypergraph4::complete(5).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert!(h.has_edge([4, 0, 2, 1]));
        let link = h.pair_link(0, 1).unwrap();
        assert_eq!(link.edge_count(), 3);
        assert_eq!(link.find_triangle(), Some([2, 3, 4]));
        let one = Hypergraph4::from_edges(6, [[5, 1, 3, 0]]).unwrap();
        assert_eq!(one.edges(), &[[0, 1, 3, 5]]);
        assert_eq!(one.count_e_u(&[0, 1, 3, 5, 2]).unwrap(), 1);
        assert!(Hypergraph4::from_edges(6, [[0, 1, 2, 2]]).is_err());
    }
}
