//! Multipartite graphs and mean-square degree conditions.
//!
//! For an `m`-partite graph with classes `V_1..V_m` and `d_j(x)` the number of
//! neighbours of `x` in `V_j`, the hypothesis of interest is
//! `sum_{x in V_i} d_j(x)^2 >= (c + eps) |V_i| |V_j|^2` for all `i < j`, with
//! `c = 1/4` forcing a triangle and `c = ((k-2)/(k-1))^2` forcing `K_k` once
//! `m` is large enough.

mod auxiliary;
mod explore;

pub use auxiliary::{
    find_three_triples, project_auxiliary, AuxBlock, AuxHypergraph, BlockColour, Projection,
    ThreeTriples, THREE_TRIPLES_MAX_CLASS, THREE_TRIPLES_MAX_M,
};
pub use explore::{explore_extremal, ExploreConfig, ExploreResult};

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::hash::{bernoulli, domain, hash_tuple};
use crate::rational::{rat, serialize_rational, Rational};

/// Graph whose vertex set is split into classes with no edges inside a class.
/// Vertices carry global ids `0..total`, class by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    part_of: Vec<usize>,
    graph: Graph,
    masks: Vec<Bitset>,
}

impl MultipartiteGraph {
    pub fn empty(sizes: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut part_of = Vec::new();
        let mut acc = 0;
        for (i, &s) in sizes.iter().enumerate() {
            offsets.push(acc);
            part_of.extend(std::iter::repeat_n(i, s));
            acc += s;
        }
        offsets.push(acc);
        let masks = (0..sizes.len())
            .map(|i| Bitset::range(acc, offsets[i], offsets[i + 1]))
            .collect();
        MultipartiteGraph {
            sizes: sizes.to_vec(),
            offsets,
            part_of,
            graph: Graph::empty(acc),
            masks,
        }
    }

    /// Edges given as `((i, a), (j, b))`: vertex `a` of class `i` to vertex
    /// `b` of class `j`.
    pub fn from_edges(
        sizes: &[usize],
        edges: impl IntoIterator<Item = ((usize, usize), (usize, usize))>,
    ) -> Result<Self> {
        let mut g = Self::empty(sizes);
        for ((i, a), (j, b)) in edges {
            let x = g.checked_global(i, a)?;
            let y = g.checked_global(j, b)?;
            if i == j {
                return Err(Error::invalid(format!("edge inside class {i}")));
            }
            g.graph.add_edge(x, y);
        }
        Ok(g)
    }

    pub fn complete(sizes: &[usize]) -> Self {
        let mut g = Self::empty(sizes);
        for x in 0..g.total() {
            for y in x + 1..g.total() {
                if g.part_of[x] != g.part_of[y] {
                    g.graph.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Each cross-class pair independently with probability `p`, decided by
    /// hashing the seed with the global ids.
    pub fn random(sizes: &[usize], p: f64, seed: u64) -> Self {
        let mut g = Self::empty(sizes);
        for x in 0..g.total() {
            for y in x + 1..g.total() {
                if g.part_of[x] != g.part_of[y]
                    && bernoulli(hash_tuple(seed, domain::RANDOM_GRAPH, &[x as u64, y as u64]), p)
                {
                    g.graph.add_edge(x, y);
                }
            }
        }
        g
    }

    fn checked_global(&self, i: usize, a: usize) -> Result<usize> {
        if i >= self.m() {
            return Err(Error::invalid(format!("class {i} out of range (m = {})", self.m())));
        }
        if a >= self.sizes[i] {
            return Err(Error::VertexOutOfRange {
                vertex: a,
                n: self.sizes[i],
            });
        }
        Ok(self.offsets[i] + a)
    }

    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.part_of.len()
    }

    pub fn global(&self, i: usize, a: usize) -> usize {
        self.offsets[i] + a
    }

    /// `(class, index within class)` of a global vertex.
    pub fn local(&self, v: usize) -> (usize, usize) {
        let i = self.part_of[v];
        (i, v - self.offsets[i])
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn class_mask(&self, i: usize) -> &Bitset {
        &self.masks[i]
    }

    /// The underlying graph on global ids.
    pub fn as_graph(&self) -> &Graph {
        &self.graph
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.graph.has_edge(x, y)
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// `d_j(x)`.
    pub fn degree_into(&self, x: usize, j: usize) -> usize {
        self.graph.neighbours(x).intersection_count(&self.masks[j])
    }

    pub(crate) fn add_edge(&mut self, x: usize, y: usize) {
        debug_assert_ne!(self.part_of[x], self.part_of[y]);
        self.graph.add_edge(x, y);
    }

    pub(crate) fn remove_edge(&mut self, x: usize, y: usize) {
        self.graph.remove_edge(x, y);
    }

    /// Bipartite piece between classes `i` (left) and `j` (right), in local
    /// indices.
    pub fn bipartite(&self, i: usize, j: usize) -> BipartiteGraph {
        let rows = (0..self.sizes[i])
            .map(|a| {
                let x = self.global(i, a);
                Bitset::from_indices(
                    self.sizes[j],
                    self.graph
                        .neighbours(x)
                        .iter()
                        .filter(|&y| self.part_of[y] == j)
                        .map(|y| y - self.offsets[j]),
                )
            })
            .collect();
        BipartiteGraph::from_rows(self.sizes[j], rows)
    }

    /// Edges as `((i, a), (j, b))` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out: Vec<_> = self
            .graph
            .edges()
            .into_iter()
            .map(|(x, y)| {
                let (p, q) = (self.local(x), self.local(y));
                if p.0 < q.0 {
                    (p, q)
                } else {
                    (q, p)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Text form: `mp <m> <s_1> .. <s_m>` then `<i> <a> <j> <b>` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("mp {}", self.m());
        for s in &self.sizes {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        for ((i, a), (j, b)) in self.edges() {
            let _ = writeln!(out, "{i} {a} {j} {b}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let mut toks = header.split_ascii_whitespace();
        if toks.next() != Some("mp") {
            return Err(Error::parse(hl, "header must start with \"mp\""));
        }
        let nums: Vec<usize> = toks
            .map(|t| t.parse().map_err(|_| Error::parse(hl, format!("bad number {t:?}"))))
            .collect::<Result<_>>()?;
        let (&m, sizes) = nums
            .split_first()
            .ok_or_else(|| Error::parse(hl, "missing class count"))?;
        if sizes.len() != m {
            return Err(Error::parse(hl, format!("expected {m} class sizes, found {}", sizes.len())));
        }
        let mut g = Self::empty(sizes);
        for (ln, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<usize> = line
                .split_ascii_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            if f.len() != 4 {
                return Err(Error::parse(ln, "edge line must be \"<i> <a> <j> <b>\""));
            }
            if f[0] >= f[2] {
                return Err(Error::parse(ln, "edge line needs i < j"));
            }
            let x = g.checked_global(f[0], f[1]).map_err(|e| Error::parse(ln, e.to_string()))?;
            let y = g.checked_global(f[2], f[3]).map_err(|e| Error::parse(ln, e.to_string()))?;
            if g.graph.has_edge(x, y) {
                return Err(Error::parse(ln, "duplicate edge"));
            }
            g.graph.add_edge(x, y);
        }
        Ok(g)
    }
}

/// Exact `sum_{x in V_i} d_j(x)^2` for every ordered pair of classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanSquareProfile {
    pub sizes: Vec<usize>,
    /// `sums[i][j]`, zero on the diagonal.
    pub sums: Vec<Vec<u64>>,
}

impl MeanSquareProfile {
    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    /// `rho[i][j] = sums[i][j] / (|V_i| |V_j|^2)`.
    pub fn ratio(&self, i: usize, j: usize) -> Rational {
        let (si, sj) = (self.sizes[i] as i128, self.sizes[j] as i128);
        rat(self.sums[i][j] as i128, si * sj * sj)
    }

    /// Whether `sums[i][j] >= threshold * |V_i| |V_j|^2`.
    pub fn meets(&self, i: usize, j: usize, threshold: &Rational) -> bool {
        self.ratio(i, j) >= *threshold
    }

    /// `i < j` pairs meeting `1/4 + eps`.
    pub fn triangle_flags(&self, eps: &Rational) -> Vec<(usize, usize, bool)> {
        self.flags(&(rat(1, 4) + eps))
    }

    /// `i < j` pairs meeting `((k-2)/(k-1))^2 + eps`.
    pub fn clique_flags(&self, k: usize, eps: &Rational) -> Vec<(usize, usize, bool)> {
        let base = rat(k as i128 - 2, k as i128 - 1);
        self.flags(&(base * base + eps))
    }

    fn flags(&self, threshold: &Rational) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                out.push((i, j, self.meets(i, j, threshold)));
            }
        }
        out
    }

    pub fn satisfies_triangle_hypothesis(&self, eps: &Rational) -> bool {
        self.triangle_flags(eps).iter().all(|f| f.2)
    }

    pub fn satisfies_clique_hypothesis(&self, k: usize, eps: &Rational) -> bool {
        self.clique_flags(k, eps).iter().all(|f| f.2)
    }

    /// `min_{i<j} rho[i][j]`; `None` when `m < 2`.
    pub fn min_ratio(&self) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                let r = self.ratio(i, j);
                if best.is_none_or(|b| r < b) {
                    best = Some(r);
                }
            }
        }
        best
    }
}

pub fn mean_square_profile(g: &MultipartiteGraph) -> Result<MeanSquareProfile> {
    if let Some(i) = g.sizes().iter().position(|&s| s == 0) {
        return Err(Error::invalid(format!("class {i} is empty")));
    }
    let m = g.m();
    let mut sums = vec![vec![0u64; m]; m];
    for x in 0..g.total() {
        let i = g.part_of(x);
        for (j, row) in sums[i].iter_mut().enumerate() {
            if j != i {
                let d = g.degree_into(x, j) as u64;
                *row += d * d;
            }
        }
    }
    Ok(MeanSquareProfile {
        sizes: g.sizes().to_vec(),
        sums,
    })
}

/// Lexicographically least triangle, as global ids.
pub fn find_triangle_mp(g: &MultipartiteGraph) -> Option<[usize; 3]> {
    g.as_graph().find_triangle()
}

/// Lexicographically least `K_k`, as global ids.
pub fn find_clique_mp(g: &MultipartiteGraph, k: usize) -> Option<Vec<usize>> {
    g.as_graph().find_clique(k)
}

/// Triangle-free graph with every mean-square ratio exactly `1/4`: each class
/// of size `s` is split into halves `A_i`, `B_i` and `A_i` is joined completely
/// to `B_j` for all `i != j`.
pub fn half_split(m: usize, s: usize) -> Result<MultipartiteGraph> {
    if !s.is_multiple_of(2) {
        return Err(Error::invalid(format!("class size must be even, got {s}")));
    }
    let h = s / 2;
    let mut g = MultipartiteGraph::empty(&vec![s; m]);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            for a in 0..h {
                for b in h..s {
                    let (x, y) = (g.global(i, a), g.global(j, b));
                    g.add_edge(x, y);
                }
            }
        }
    }
    Ok(g)
}

/// Sizes of `Q_ij(r) = {x in V_i : d_j(x) >= (1/2 + r delta) |V_j|}` and the
/// resulting colour `r(i, j)` of each class pair.
#[derive(Clone, Debug, Serialize)]
pub struct ProofDiagnostics {
    #[serde(serialize_with = "serialize_rational")]
    pub delta: Rational,
    /// `floor(1 / (2 delta))`.
    pub r_max: usize,
    pub pairs: Vec<PairDiagnostic>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairDiagnostic {
    pub i: usize,
    pub j: usize,
    /// `q_sizes[r - 1] = |Q_ij(r)|` for `r = 1..=r_max`.
    pub q_sizes: Vec<usize>,
    /// Largest `r` with `|Q_ij(r)| >= delta |V_i|`, or 0 if there is none.
    pub colour: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub ratio: Rational,
    /// Present when an `eps` was supplied: whether the pair meets `1/4 + eps`.
    pub hypothesis: Option<bool>,
    /// Present when the pair meets the hypothesis and `eps >= 2 delta + delta^2`:
    /// whether `|Q_ij(1)| >= delta |V_i|` as the counting argument guarantees.
    pub claim: Option<bool>,
}

impl ProofDiagnostics {
    /// Pairs where the guaranteed `|Q_ij(1)|` bound was checked and failed.
    pub fn claim_violations(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|p| p.claim == Some(false))
            .map(|p| (p.i, p.j))
            .collect()
    }
}

pub fn proof_diagnostics(
    g: &MultipartiteGraph,
    delta: &Rational,
    eps: Option<&Rational>,
) -> Result<ProofDiagnostics> {
    let half = rat(1, 2);
    if *delta <= rat(0, 1) || *delta >= half {
        return Err(Error::invalid(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    let profile = mean_square_profile(g)?;
    let r_max = (rat(1, 1) / (delta * 2)).floor().to_integer() as usize;
    let claim_applies = eps.is_some_and(|e| *e >= delta * 2 + delta * delta);
    let mut pairs = Vec::new();
    for i in 0..g.m() {
        for j in i + 1..g.m() {
            let sj = g.sizes()[j] as i128;
            let degrees: Vec<i128> = (0..g.sizes()[i])
                .map(|a| g.degree_into(g.global(i, a), j) as i128)
                .collect();
            let q_sizes: Vec<usize> = (1..=r_max)
                .map(|r| {
                    let need = (half + delta * r as i128) * sj;
                    degrees.iter().filter(|&&d| rat(d, 1) >= need).count()
                })
                .collect();
            let floor = delta * g.sizes()[i] as i128;
            let colour = (1..=r_max)
                .rev()
                .find(|&r| rat(q_sizes[r - 1] as i128, 1) >= floor)
                .unwrap_or(0);
            let hypothesis = eps.map(|e| profile.meets(i, j, &(rat(1, 4) + e)));
            let claim = match hypothesis {
                Some(true) if claim_applies => {
                    Some(q_sizes.first().is_some_and(|&q| rat(q as i128, 1) >= floor))
                }
                _ => None,
            };
            pairs.push(PairDiagnostic {
                i,
                j,
                q_sizes,
                colour,
                ratio: profile.ratio(i, j),
                hypothesis,
                claim,
            });
        }
    }
    Ok(ProofDiagnostics {
        delta: *delta,
        r_max,
        pairs,
    })
}
