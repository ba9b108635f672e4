//! Searches for forbidden configurations. Every search returns the
//! lexicographically least witness; counts are exact.

mod embed;
mod vanishing;

pub use embed::{embed_small, EMBED_MAX_VERTICES};
pub use vanishing::{check_vanishing_condition, PairColour, VanishingWitness, VANISHING_MAX_VERTICES};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{ones, Bitset};
use crate::constructions::PairColouring;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Hypergraph4};

/// Largest `k` accepted by [`find_sk`].
pub const SK_MAX_K: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApexPosition {
    Min,
    Max,
    Interior,
}

impl ApexPosition {
    fn of(apex: usize, vertices: &[usize]) -> Self {
        if vertices.iter().all(|&v| v >= apex) {
            ApexPosition::Min
        } else if vertices.iter().all(|&v| v <= apex) {
            ApexPosition::Max
        } else {
            ApexPosition::Interior
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex_position: Option<ApexPosition>,
}

impl Witness {
    fn with_apex(kind: impl Into<String>, vertices: Vec<usize>, apex: usize) -> Self {
        Witness {
            apex_position: Some(ApexPosition::of(apex, &vertices)),
            kind: kind.into(),
            vertices,
            apex: Some(apex),
        }
    }

    fn plain(kind: impl Into<String>, vertices: Vec<usize>) -> Self {
        Witness {
            kind: kind.into(),
            vertices,
            apex: None,
            apex_position: None,
        }
    }
}

/// Word-wise `a & b`, with every bit at or below `floor` cleared.
fn and_above(a: &[u64], b: &[u64], floor: usize, out: &mut [u64]) {
    for (o, (x, y)) in out.iter_mut().zip(a.iter().zip(b)) {
        *o = x & y;
    }
    clear_through(out, floor);
}

fn clear_through(words: &mut [u64], floor: usize) {
    let w = floor >> 6;
    for x in words.iter_mut().take(w) {
        *x = 0;
    }
    if w < words.len() {
        let keep = (floor & 63) + 1;
        words[w] &= if keep == 64 { 0 } else { !0u64 << keep };
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    ones(words).next()
}

/// Whether `x` is an apex of the 4-set: the three triples through it are all
/// edges.
fn is_apex(h: &Hypergraph3, x: usize, set: [usize; 4]) -> bool {
    let o: Vec<usize> = set.iter().copied().filter(|&v| v != x).collect();
    h.has_edge(x, o[0], o[1]) && h.has_edge(x, o[0], o[2]) && h.has_edge(x, o[1], o[2])
}

/// A copy of `K4-` (four vertices, three edges through a common apex). The
/// witness is the least 4-set, with its least admissible apex. In ordered
/// mode the apex must be the smallest or largest of the four.
pub fn find_k4_minus(h: &Hypergraph3, ordered: bool) -> Option<Witness> {
    let n = h.n();
    let wpr = h.words_per_row();
    (0..n).into_par_iter().find_map_first(|a| {
        let mut cand = vec![0u64; wpr];
        for b in a + 1..n {
            let lab = h.link_row(a, b);
            for c in b + 1..n {
                let lac = h.link_row(a, c);
                let lbc = h.link_row(b, c);
                let abc = h.has_edge(a, b, c);
                for i in 0..wpr {
                    let (x, y, z) = (lab[i], lac[i], lbc[i]);
                    cand[i] = match (ordered, abc) {
                        // apex d needs all three; apex a needs ab and ac
                        (true, true) => x & y,
                        (true, false) | (false, false) => x & y & z,
                        // any apex: two of the three rows
                        (false, true) => (x & y) | (x & z) | (y & z),
                    };
                }
                clear_through(&mut cand, c);
                if let Some(d) = first_one(&cand) {
                    let set = [a, b, c, d];
                    let apexes: &[usize] = if ordered { &[a, d] } else { &set };
                    let apex = *apexes
                        .iter()
                        .find(|&&x| is_apex(h, x, set))
                        .expect("candidate 4-set has an apex");
                    return Some(Witness::with_apex("k4-", set.to_vec(), apex));
                }
            }
        }
        None
    })
}

/// Copies of `K4-` counted with their apex: the number of pairs
/// `(a, {x, y, z})` with `xyz` a triangle in the link of `a`. A complete
/// `K4` therefore contributes 4.
pub fn count_k4_minus(h: &Hypergraph3) -> u64 {
    let n = h.n();
    let wpr = h.words_per_row();
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut buf = vec![0u64; wpr];
            let mut total = 0u64;
            for x in 0..n {
                if x == a {
                    continue;
                }
                let lax = h.link_row(a, x);
                for y in ones(lax).filter(|&y| y > x) {
                    and_above(lax, h.link_row(a, y), y, &mut buf);
                    total += buf.iter().map(|w| w.count_ones() as u64).sum::<u64>();
                }
            }
            total
        })
        .sum()
}

/// Least `k`-set all of whose triples are edges.
pub fn find_clique3(h: &Hypergraph3, k: usize) -> Result<Option<Witness>> {
    if k < 4 {
        return Err(Error::invalid(format!("clique search needs k >= 4, got {k}")));
    }
    let n = h.n();
    Ok((0..n).into_par_iter().find_map_first(|a| {
        let mut stack = vec![a];
        for b in a + 1..n {
            stack.push(b);
            let mut cand = Bitset::from_indices(n, ones(h.link_row(a, b)));
            cand.clear_up_to(b);
            if clique_dfs(h, k, &mut stack, cand) {
                return Some(Witness::plain(format!("K{k}(3)"), stack));
            }
            stack.pop();
        }
        None
    }))
}

/// `cand`: vertices above the top of `stack` completing every pair of it.
fn clique_dfs(h: &Hypergraph3, k: usize, stack: &mut Vec<usize>, cand: Bitset) -> bool {
    if stack.len() == k {
        return true;
    }
    if stack.len() + cand.count() < k {
        return false;
    }
    for v in cand.iter() {
        let mut next = cand.clone();
        next.clear_up_to(v);
        for &x in stack.iter() {
            next.intersect_words(h.link_row(x, v));
        }
        stack.push(v);
        if clique_dfs(h, k, stack, next) {
            return true;
        }
        stack.pop();
    }
    false
}

/// `S_k`: an apex `a` and `b_1 < .. < b_k` spanning a `K_k` in the link of
/// `a`. Least by `(a, b_1, .., b_k)`; the witness lists `a` first.
pub fn find_sk(h: &Hypergraph3, k: usize) -> Result<Option<Witness>> {
    if k < 3 {
        return Err(Error::invalid(format!("S_k needs k >= 3, got {k}")));
    }
    if k > SK_MAX_K {
        return Err(Error::Refused(format!("S_k search supports k <= {SK_MAX_K}, got {k}")));
    }
    let n = h.n();
    (0..n)
        .into_par_iter()
        .map(|a| {
            let link = h.link_graph(a)?;
            Ok(link.find_clique(k).map(|b| {
                let mut vertices = vec![a];
                vertices.extend(b);
                Witness::with_apex(format!("S{k}"), vertices, a)
            }))
        })
        .find_map_first(|r: Result<Option<Witness>>| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// `F(4)`: a pair `{u, v}` whose link graph contains a triangle `xyz`.
/// Least by `(u, v, x, y, z)`; the witness lists the five vertices in that
/// order.
pub fn find_f4(h: &Hypergraph4) -> Option<Witness> {
    let n = h.n();
    if n < 5 {
        return None;
    }
    let wpr = crate::bitset::words_for(n);
    (0..n).into_par_iter().find_map_first(|u| {
        let mut buf = vec![0u64; wpr];
        for v in u + 1..n {
            for x in (0..n).filter(|&x| x != u && x != v) {
                let rx = h.triple_row(u, v, x);
                for y in ones(rx).filter(|&y| y > x) {
                    and_above(rx, h.triple_row(u, v, y), y, &mut buf);
                    if let Some(z) = first_one(&buf) {
                        return Some(Witness::plain("F4", vec![u, v, x, y, z]));
                    }
                }
            }
        }
        None
    })
}

/// The classes `N<_i(a) + N>_{i+1}(a)` of the `k - 1` colour link partition
/// and whether each is independent in the link graph of `a`.
#[derive(Clone, Debug, Serialize)]
pub struct LinkColouring {
    pub apex: usize,
    pub classes: Vec<Vec<usize>>,
    pub independent: Vec<bool>,
}

impl LinkColouring {
    pub fn all_independent(&self) -> bool {
        self.independent.iter().all(|&b| b)
    }
}

/// Class `i` holds `x < a` with `psi(x, a) = i` and `x > a` with
/// `psi(a, x) = i + 1 (mod k - 1)`.
pub fn link_colouring_witness(
    h: &Hypergraph3,
    psi: Option<&PairColouring>,
    a: usize,
) -> Result<LinkColouring> {
    let psi = psi.ok_or_else(|| {
        Error::Refused("link colouring needs the pair colouring used to build the hypergraph".into())
    })?;
    if psi.n() != h.n() {
        return Err(Error::invalid(format!(
            "colouring on {} vertices, hypergraph on {}",
            psi.n(),
            h.n()
        )));
    }
    let link = h.link_graph(a)?;
    let q = psi.num_colours();
    let mut classes = vec![Vec::new(); q];
    for x in (0..h.n()).filter(|&x| x != a) {
        let c = psi.colour(x, a) as usize;
        let i = if x < a { c } else { (c + q - 1) % q };
        classes[i].push(x);
    }
    let independent = classes.iter().map(|c| link.is_independent(c)).collect();
    Ok(LinkColouring {
        apex: a,
        classes,
        independent,
    })
}
