//! Bipartite regularity, triangle counting in tripartite graphs and the
//! relative density of a hypergraph on a triad.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_density, exact_limit, mask_to_vec, shard_bits, DeviationKind, DeviationReport,
    DeviationWitness, Method, Mode, BIPARTITE_EXACT_CAP, BIPARTITE_EXACT_HARD_CAP,
};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::hash::derive_seed;
use crate::hypergraph::Hypergraph3;
use crate::multipartite::MultipartiteGraph;
use crate::rational::{rat, serialize_rational, to_f64, Rational};

/// Running column counts `c_y = |N(y) & X'|` for a left subset `X'`.
struct Counts<'a> {
    g: &'a BipartiteGraph,
    c: Vec<i128>,
    s: i128,
}

impl<'a> Counts<'a> {
    fn new(g: &'a BipartiteGraph, set: impl Iterator<Item = usize>) -> Self {
        let mut me = Counts {
            g,
            c: vec![0; g.right()],
            s: 0,
        };
        for x in set {
            me.toggle(x, true);
        }
        me
    }

    fn toggle(&mut self, x: usize, adding: bool) {
        let step = if adding { 1 } else { -1 };
        for y in self.g.row(x).iter() {
            self.c[y] += step;
        }
        self.s += step;
    }

    /// `(sum of positive residuals, sum of negative residuals)` of
    /// `q c_y - p |X'|`.
    fn split(&self, p: i128, q: i128) -> (i128, i128) {
        let ps = p * self.s;
        let (mut pos, mut neg) = (0, 0);
        for &c in &self.c {
            let r = q * c - ps;
            if r > 0 {
                pos += r;
            } else {
                neg -= r;
            }
        }
        (pos, neg)
    }

    fn value(&self, p: i128, q: i128) -> i128 {
        let (pos, neg) = self.split(p, q);
        pos.max(neg)
    }

    /// The right vertices of the winning residual sign.
    fn best_right(&self, p: i128, q: i128) -> Vec<usize> {
        let (pos, neg) = self.split(p, q);
        let ps = p * self.s;
        (0..self.c.len())
            .filter(|&y| {
                let r = q * self.c[y] - ps;
                if pos >= neg {
                    r > 0
                } else {
                    r < 0
                }
            })
            .collect()
    }
}

/// Maximum over `X' <= X`, `Y' <= Y` of `|e(X', Y') - d2 |X'| |Y'||`, with
/// `eta = D / (|X| |Y|)`. For fixed `X'` the best `Y'` takes every right
/// vertex of one residual sign, so only the smaller side is enumerated.
pub fn bipartite_regularity_deviation(
    g: &BipartiteGraph,
    d2: Option<Rational>,
    mode: Mode,
) -> Result<DeviationReport> {
    let (l, r) = (g.left(), g.right());
    let d2 = d2.unwrap_or_else(|| {
        if l * r == 0 {
            rat(0, 1)
        } else {
            rat(g.edge_count() as i128, (l * r) as i128)
        }
    });
    check_density(&d2)?;
    let (p, q) = (*d2.numer(), *d2.denom());
    let flipped = r < l;
    let t;
    let work = if flipped {
        t = g.transpose();
        &t
    } else {
        g
    };
    let (method, left_set) = match mode {
        Mode::Exact { cap } => {
            exact_limit(
                "bipartite deviation",
                work.left(),
                cap,
                BIPARTITE_EXACT_CAP,
                BIPARTITE_EXACT_HARD_CAP,
            )?;
            (Method::Exact, mask_to_vec(exact(work, p, q)))
        }
        Mode::Search { restarts, seed } => {
            let restarts = restarts.max(1);
            let runs: Vec<(i128, Vec<usize>)> = (0..restarts)
                .into_par_iter()
                .map(|i| climb(work, p, q, derive_seed(seed, i as u64)))
                .collect();
            let best = runs
                .into_iter()
                .reduce(|a, b| if b.0 > a.0 { b } else { a })
                .expect("at least one restart");
            (Method::LocalSearch, best.1)
        }
    };
    let counts = Counts::new(work, left_set.iter().copied());
    let value = counts.value(p, q);
    let right_set = counts.best_right(p, q);
    let sets = if flipped {
        vec![right_set, left_set]
    } else {
        vec![left_set, right_set]
    };
    let report = DeviationReport::new(
        DeviationKind::Bipartite,
        l + r,
        d2,
        rat(value, q),
        (l * r) as i128,
        DeviationWitness {
            sets,
            pairs: Vec::new(),
        },
        method,
    );
    Ok(match mode {
        Mode::Search { restarts, seed } => report.with_search(restarts.max(1), seed),
        Mode::Exact { .. } => report,
    })
}

fn exact(g: &BipartiteGraph, p: i128, q: i128) -> u64 {
    let n = g.left();
    let b = shard_bits(n);
    let low = n - b;
    let (_, mask) = (0..1u64 << b)
        .into_par_iter()
        .map(|t| {
            let mut u = t << low;
            let mut counts = Counts::new(g, crate::bitset::ones(&[u]));
            let mut best = (counts.value(p, q), u);
            for i in 1..1u64 << low {
                let v = i.trailing_zeros() as usize;
                let adding = u >> v & 1 == 0;
                counts.toggle(v, adding);
                u ^= 1 << v;
                let a = counts.value(p, q);
                if a > best.0 || (a == best.0 && u < best.1) {
                    best = (a, u);
                }
            }
            best
        })
        .reduce(
            || (-1, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    mask
}

fn climb(g: &BipartiteGraph, p: i128, q: i128, seed: u64) -> (i128, Vec<usize>) {
    let n = g.left();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let incl: f64 = rng.gen_range(0.05..0.95);
    let mut inside: Vec<bool> = (0..n).map(|_| rng.gen_bool(incl)).collect();
    let mut counts = Counts::new(g, (0..n).filter(|&x| inside[x]));
    let mut cur = counts.value(p, q);
    for _ in 0..4 * n + 4 {
        let mut pick: Option<(i128, usize)> = None;
        for x in 0..n {
            counts.toggle(x, !inside[x]);
            let a = counts.value(p, q);
            counts.toggle(x, inside[x]);
            if a > cur && pick.is_none_or(|(b, _)| a > b) {
                pick = Some((a, x));
            }
        }
        let Some((a, x)) = pick else { break };
        counts.toggle(x, !inside[x]);
        inside[x] = !inside[x];
        cur = a;
    }
    (cur, (0..n).filter(|&x| inside[x]).collect())
}

fn require_tripartite(p: &MultipartiteGraph) -> Result<()> {
    if p.m() != 3 {
        return Err(Error::invalid(format!("expected three parts, found {}", p.m())));
    }
    Ok(())
}

/// Exact number of triangles, each with one vertex per part.
pub fn triangle_count_tripartite(p: &MultipartiteGraph) -> Result<u64> {
    require_tripartite(p)?;
    let g = p.as_graph();
    let mut total = 0u64;
    for a in 0..p.sizes()[0] {
        let x = p.global(0, a);
        let to_z = g.neighbours(x).intersection(p.class_mask(2));
        for y in g.neighbours(x).iter().filter(|&y| p.part_of(y) == 1) {
            total += to_z.intersection_count(g.neighbours(y)) as u64;
        }
    }
    Ok(total)
}

/// Exact triangle count against `d2^3 |X||Y||Z| + 3 delta |X||Y||Z|`, with
/// `delta` the largest normalized deviation of the three bipartite pieces.
#[derive(Clone, Debug, Serialize)]
pub struct TclReport {
    pub triangles: u64,
    pub sizes: [usize; 3],
    #[serde(serialize_with = "serialize_rational")]
    pub d2: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub delta_hat: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    pub bound_value: f64,
    pub holds: bool,
    pub method: Method,
    pub pair_deviations: Vec<DeviationReport>,
}

pub fn tcl_check(p: &MultipartiteGraph, d2: Rational, mode: Mode) -> Result<TclReport> {
    require_tripartite(p)?;
    check_density(&d2)?;
    let triangles = triangle_count_tripartite(p)?;
    let mut pair_deviations = Vec::with_capacity(3);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        pair_deviations.push(bipartite_regularity_deviation(&p.bipartite(i, j), Some(d2), mode)?);
    }
    let delta_hat = pair_deviations
        .iter()
        .map(|r| r.eta_exact)
        .max()
        .expect("three pairs");
    let sizes = [p.sizes()[0], p.sizes()[1], p.sizes()[2]];
    let vol = (sizes[0] * sizes[1] * sizes[2]) as i128;
    let bound = d2 * d2 * d2 * vol + delta_hat * 3 * vol;
    let method = if matches!(mode, Mode::Exact { .. }) {
        Method::Exact
    } else {
        Method::LocalSearch
    };
    Ok(TclReport {
        triangles,
        sizes,
        d2,
        delta_hat,
        bound_value: to_f64(&bound),
        holds: rat(triangles as i128, 1) <= bound,
        bound,
        method,
        pair_deviations,
    })
}

/// A tripartite graph whose vertices are labelled by host hypergraph
/// vertices.
#[derive(Clone, Debug)]
pub struct Triad {
    graph: MultipartiteGraph,
    host: Vec<usize>,
}

impl Triad {
    /// `host[v]` labels global vertex `v` of `graph`.
    pub fn new(graph: MultipartiteGraph, host: Vec<usize>) -> Result<Self> {
        require_tripartite(&graph)?;
        if host.len() != graph.total() {
            return Err(Error::invalid(format!(
                "{} host labels for {} vertices",
                host.len(),
                graph.total()
            )));
        }
        Ok(Triad { graph, host })
    }

    /// Complete tripartite graph on three vertex lists.
    pub fn complete(parts: [&[usize]; 3]) -> Self {
        let graph = MultipartiteGraph::complete(&parts.map(|p| p.len()));
        let host = parts.concat();
        Triad { graph, host }
    }

    pub fn graph(&self) -> &MultipartiteGraph {
        &self.graph
    }

    pub fn host(&self) -> &[usize] {
        &self.host
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeDensity {
    pub triangles: u64,
    pub hyperedges: u64,
    /// `hyperedges / triangles`, or 0 when there are no triangles.
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub value_f64: f64,
}

/// Fraction of the triad's triangles whose host labels form an edge of `h`.
pub fn relative_density(h: &Hypergraph3, t: &Triad) -> Result<RelativeDensity> {
    if let Some(&v) = t.host.iter().find(|&&v| v >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    let p = &t.graph;
    let g = p.as_graph();
    let (mut triangles, mut hyperedges) = (0u64, 0u64);
    for a in 0..p.sizes()[0] {
        let x = p.global(0, a);
        let to_z: Bitset = g.neighbours(x).intersection(p.class_mask(2));
        for y in g.neighbours(x).iter().filter(|&y| p.part_of(y) == 1) {
            for z in to_z.intersection(g.neighbours(y)).iter() {
                triangles += 1;
                if h.has_edge(t.host[x], t.host[y], t.host[z]) {
                    hyperedges += 1;
                }
            }
        }
    }
    let value = if triangles == 0 {
        rat(0, 1)
    } else {
        rat(hyperedges as i128, triangles as i128)
    };
    Ok(RelativeDensity {
        triangles,
        hyperedges,
        value_f64: to_f64(&value),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_bipartite() {
        let k = BipartiteGraph::complete(5, 7);
        let r = bipartite_regularity_deviation(&k, Some(rat(1, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(0, 1));
        let e = BipartiteGraph::empty(5, 7);
        let r = bipartite_regularity_deviation(&e, Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(0, 1));
    }

    #[test]
    fn single_edge_bipartite() {
        let g = BipartiteGraph::from_edges(3, 30, [(1, 20)]).unwrap();
        let r = bipartite_regularity_deviation(&g, Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(1, 1));
        assert_eq!(r.witness.sets, vec![vec![1], vec![20]]);
        // Transposed enumeration gives the same answer.
        let r = bipartite_regularity_deviation(&g.transpose(), Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.witness.sets, vec![vec![20], vec![1]]);
        assert!(bipartite_regularity_deviation(&BipartiteGraph::empty(25, 25), None, Mode::exact())
            .unwrap_err()
            .is_refusal());
    }

    #[test]
    fn complete_tripartite_triangles() {
        let p = MultipartiteGraph::complete(&[2, 3, 4]);
        assert_eq!(triangle_count_tripartite(&p).unwrap(), 24);
        let r = tcl_check(&p, rat(1, 1), Mode::exact()).unwrap();
        assert_eq!(r.delta_hat, rat(0, 1));
        assert_eq!(r.bound, rat(24, 1));
        assert!(r.holds);
        let e = MultipartiteGraph::complete(&[2, 0, 4]);
        assert_eq!(triangle_count_tripartite(&e).unwrap(), 0);
    }

    #[test]
    fn relative_density_conventions() {
        let h = Hypergraph3::complete(9).unwrap();
        let t = Triad::complete([&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]);
        assert_eq!(relative_density(&h, &t).unwrap().value, rat(1, 1));
        let empty = Triad::new(MultipartiteGraph::empty(&[2, 2, 2]), (0..6).collect()).unwrap();
        let r = relative_density(&h, &empty).unwrap();
        assert_eq!((r.triangles, r.value), (0, rat(0, 1)));
    }
}
