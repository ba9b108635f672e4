//! Hill climbing over triangle-free multipartite graphs, starting from the
//! half split and maximizing `min_{i<j} rho[i][j]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{find_triangle_mp, half_split, mean_square_profile, MultipartiteGraph};
use crate::error::{Error, Result};
use crate::hash::derive_seed;
use crate::rational::{serialize_rational, Rational};

#[derive(Clone, Debug)]
pub struct ExploreConfig {
    pub m: usize,
    pub s: usize,
    /// Stop a restart early once its minimum ratio reaches this value.
    pub target: Option<Rational>,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl ExploreConfig {
    pub fn new(m: usize, s: usize, seed: u64) -> Self {
        ExploreConfig {
            m,
            s,
            target: None,
            restarts: 8,
            iterations: (m * s).pow(2).max(200),
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExploreResult {
    #[serde(skip)]
    pub graph: MultipartiteGraph,
    #[serde(serialize_with = "serialize_rational")]
    pub min_ratio: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub start_ratio: Rational,
    pub best_restart: usize,
    pub restarts: usize,
    pub edges: usize,
    /// Always true on success: the returned graph passed an exhaustive scan.
    pub triangle_free: bool,
}

pub fn explore_extremal(cfg: &ExploreConfig) -> Result<ExploreResult> {
    if cfg.m < 2 {
        return Err(Error::invalid("explorer needs at least two classes"));
    }
    if cfg.restarts == 0 {
        return Err(Error::invalid("explorer needs at least one restart"));
    }
    let start = half_split(cfg.m, cfg.s)?;
    let start_ratio = min_ratio(&start)?;
    let runs: Vec<(MultipartiteGraph, Rational)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| climb(&start, start_ratio, cfg, derive_seed(cfg.seed, r as u64)))
        .collect::<Result<_>>()?;
    // First restart wins ties.
    let (best_restart, (graph, ratio)) = runs
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .1 > best.1 .1 { cur } else { best })
        .expect("at least one restart");
    if let Some(t) = find_triangle_mp(&graph) {
        return Err(Error::invalid(format!("explorer produced a triangle {t:?}")));
    }
    Ok(ExploreResult {
        edges: graph.edge_count(),
        graph,
        min_ratio: ratio,
        start_ratio,
        best_restart,
        restarts: cfg.restarts,
        triangle_free: true,
    })
}

fn min_ratio(g: &MultipartiteGraph) -> Result<Rational> {
    Ok(mean_square_profile(g)?
        .min_ratio()
        .expect("at least two classes"))
}

fn climb(
    start: &MultipartiteGraph,
    start_ratio: Rational,
    cfg: &ExploreConfig,
    seed: u64,
) -> Result<(MultipartiteGraph, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    let mut cur_ratio = start_ratio;
    let mut best = (cur.clone(), cur_ratio);
    for _ in 0..cfg.iterations {
        if cfg.target.is_some_and(|t| best.1 >= t) {
            break;
        }
        let non_edges: Vec<(usize, usize)> = (0..cur.total())
            .flat_map(|x| (x + 1..cur.total()).map(move |y| (x, y)))
            .filter(|&(x, y)| cur.part_of(x) != cur.part_of(y) && !cur.has_edge(x, y))
            .collect();
        let Some(&(x, y)) = non_edges.choose(&mut rng) else {
            break;
        };
        let common = cur
            .as_graph()
            .neighbours(x)
            .intersection(cur.as_graph().neighbours(y));
        let mut next = cur.clone();
        match common.count() {
            0 => {}
            1 => {
                let z = common.first().expect("one common neighbour");
                let w = if rng.gen::<bool>() { x } else { y };
                next.remove_edge(w, z);
            }
            _ => continue,
        }
        next.add_edge(x, y);
        let r = min_ratio(&next)?;
        if r > cur_ratio || (r == cur_ratio && rng.gen::<bool>()) {
            cur = next;
            cur_ratio = r;
            if cur_ratio > best.1 {
                best = (cur.clone(), cur_ratio);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn never_below_start() {
        let mut cfg = ExploreConfig::new(3, 6, 1);
        cfg.restarts = 3;
        cfg.iterations = 100;
        let r = explore_extremal(&cfg).unwrap();
        assert!(r.min_ratio >= rat(1, 4));
        assert!(r.triangle_free);
        assert_eq!(find_triangle_mp(&r.graph), None);
    }

    #[test]
    fn two_classes_fill_up() {
        let cfg = ExploreConfig::new(2, 4, 5);
        let r = explore_extremal(&cfg).unwrap();
        assert_eq!(r.min_ratio, rat(1, 1));
        assert_eq!(r.edges, 16);
    }

    #[test]
    fn deterministic() {
        let mut cfg = ExploreConfig::new(3, 4, 11);
        cfg.restarts = 4;
        let a = explore_extremal(&cfg).unwrap();
        let b = explore_extremal(&cfg).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.best_restart, b.best_restart);
    }
}
