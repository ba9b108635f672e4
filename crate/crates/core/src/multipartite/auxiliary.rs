//! Auxiliary triple systems on pair classes.
//!
//! For indices `i < j < k` the block `A^{ijk}` is a set of triples
//! `(alpha, beta, gamma)` with `alpha` in class `P^{ij}`, `beta` in `P^{ik}`
//! and `gamma` in `P^{jk}`.

use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::hash::{bernoulli, domain, hash_tuple};
use crate::hypergraph::{pair_rank, triple_rank};
use crate::rational::{rat, serialize_rational, Rational};

/// Exhaustive search budget for [`find_three_triples`].
pub const THREE_TRIPLES_MAX_M: usize = 8;
pub const THREE_TRIPLES_MAX_CLASS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxBlock {
    sizes: [usize; 3],
    triples: Bitset,
}

impl AuxBlock {
    /// Block with class sizes `[|P^ij|, |P^ik|, |P^jk|]` and no triples.
    pub fn empty(sizes: [usize; 3]) -> Self {
        AuxBlock {
            sizes,
            triples: Bitset::new(sizes.iter().product()),
        }
    }

    pub fn complete(sizes: [usize; 3]) -> Self {
        AuxBlock {
            sizes,
            triples: Bitset::full(sizes.iter().product()),
        }
    }

    pub fn from_fn(sizes: [usize; 3], mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut b = Self::empty(sizes);
        for x in 0..sizes[0] {
            for y in 0..sizes[1] {
                for z in 0..sizes[2] {
                    if f(x, y, z) {
                        let i = b.index(x, y, z);
                        b.triples.insert(i);
                    }
                }
            }
        }
        b
    }

    pub fn from_triples(
        sizes: [usize; 3],
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut b = Self::empty(sizes);
        for (x, y, z) in triples {
            if x >= sizes[0] || y >= sizes[1] || z >= sizes[2] {
                return Err(Error::invalid(format!("triple ({x}, {y}, {z}) out of range")));
            }
            let i = b.index(x, y, z);
            b.triples.insert(i);
        }
        Ok(b)
    }

    /// Each triple independently with probability `p`.
    pub fn random(sizes: [usize; 3], p: f64, seed: u64) -> Self {
        Self::from_fn(sizes, |x, y, z| {
            bernoulli(
                hash_tuple(seed, domain::RANDOM_3GRAPH, &[x as u64, y as u64, z as u64]),
                p,
            )
        })
    }

    fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.sizes[1] + y) * self.sizes[2] + z
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.triples.contains(self.index(x, y, z))
    }

    pub fn triple_count(&self) -> usize {
        self.triples.count()
    }

    /// Triple count over `|P^ij| |P^ik| |P^jk|`.
    pub fn density(&self) -> Rational {
        let total: usize = self.sizes.iter().product();
        if total == 0 {
            return rat(0, 1);
        }
        rat(self.triple_count() as i128, total as i128)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockColour {
    /// `(*)` fails.
    Red,
    /// `(**)` fails.
    Green,
    /// Both hold; green by the fixed convention.
    GreenByConvention,
    /// Both fail, which only happens below the density hypothesis.
    Undetermined,
}

/// The two bipartite projections of a block and the mean-square tests on
/// them.
#[derive(Clone, Debug, Serialize)]
pub struct Projection {
    /// `Q^i_{jk}` on `(P^ij, P^ik)`: `alpha ~ beta` iff some `gamma` completes.
    #[serde(skip)]
    pub q_i: BipartiteGraph,
    /// `Q^k_{ij}` on `(P^ik, P^jk)`: `beta ~ gamma` iff some `alpha` completes.
    #[serde(skip)]
    pub q_k: BipartiteGraph,
    pub sizes: [usize; 3],
    pub triple_count: usize,
    /// `sum_beta deg_{Q^i}(beta)^2`.
    pub star_sum: u64,
    /// `sum_beta deg_{Q^k}(beta)^2`.
    pub star_star_sum: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub star_ratio: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub star_star_ratio: Rational,
    pub star_holds: bool,
    pub star_star_holds: bool,
    /// Triple count at least `(1/4 + eps) |P^ij| |P^ik| |P^jk|`.
    pub hypothesis_holds: bool,
    pub colour: BlockColour,
    /// Set when the colour was chosen by convention.
    pub flagged: bool,
}

impl Projection {
    /// The hypothesis forces at least one of the two estimates.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.star_holds || self.star_star_holds
    }
}

pub fn project_auxiliary(block: &AuxBlock, eps: &Rational) -> Result<Projection> {
    let [a, b, c] = block.sizes;
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::invalid("auxiliary block has an empty class"));
    }
    let mut qi_rows = vec![Bitset::new(b); a];
    let mut qk_rows = vec![Bitset::new(c); b];
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                if block.contains(x, y, z) {
                    qi_rows[x].insert(y);
                    qk_rows[y].insert(z);
                }
            }
        }
    }
    let q_i = BipartiteGraph::from_rows(b, qi_rows);
    let q_k = BipartiteGraph::from_rows(c, qk_rows);
    let star_sum: u64 = q_i.right_degrees().iter().map(|&d| (d * d) as u64).sum();
    let star_star_sum: u64 = (0..b).map(|y| q_k.row(y).count() as u64).map(|d| d * d).sum();
    let (ai, bi, ci) = (a as i128, b as i128, c as i128);
    let star_ratio = rat(star_sum as i128, ai * ai * bi);
    let star_star_ratio = rat(star_star_sum as i128, ci * ci * bi);
    let threshold = rat(1, 4) + eps;
    let star_holds = star_ratio >= threshold;
    let star_star_holds = star_star_ratio >= threshold;
    let triple_count = block.triple_count();
    let hypothesis_holds = rat(triple_count as i128, ai * bi * ci) >= threshold;
    let colour = match (star_holds, star_star_holds) {
        (false, true) => BlockColour::Red,
        (true, false) => BlockColour::Green,
        (true, true) => BlockColour::GreenByConvention,
        (false, false) => BlockColour::Undetermined,
    };
    Ok(Projection {
        q_i,
        q_k,
        sizes: block.sizes,
        triple_count,
        star_sum,
        star_star_sum,
        star_ratio,
        star_star_ratio,
        star_holds,
        star_star_holds,
        hypothesis_holds,
        colour,
        flagged: colour == BlockColour::GreenByConvention,
    })
}

/// Auxiliary hypergraph on the classes `P^{ij}`, `i < j < m`, made of one
/// block per index triple.
#[derive(Clone, Debug)]
pub struct AuxHypergraph {
    m: usize,
    class_sizes: Vec<usize>,
    blocks: Vec<AuxBlock>,
}

impl AuxHypergraph {
    /// All blocks empty; `class_size(i, j)` gives `|P^{ij}|`.
    pub fn empty(m: usize, class_size: impl Fn(usize, usize) -> usize) -> Self {
        let mut class_sizes = vec![0; m * m.saturating_sub(1) / 2];
        for j in 0..m {
            for i in 0..j {
                class_sizes[pair_rank(i, j)] = class_size(i, j);
            }
        }
        let mut blocks = Vec::new();
        for c in 0..m {
            for b in 0..c {
                for a in 0..b {
                    debug_assert_eq!(blocks.len(), triple_rank(a, b, c));
                    let sizes = [
                        class_sizes[pair_rank(a, b)],
                        class_sizes[pair_rank(a, c)],
                        class_sizes[pair_rank(b, c)],
                    ];
                    blocks.push(AuxBlock::empty(sizes));
                }
            }
        }
        AuxHypergraph {
            m,
            class_sizes,
            blocks,
        }
    }

    /// Every block filled by `make(i, j, k, sizes)`.
    pub fn from_blocks(
        m: usize,
        class_size: impl Fn(usize, usize) -> usize,
        mut make: impl FnMut(usize, usize, usize, [usize; 3]) -> AuxBlock,
    ) -> Result<Self> {
        let mut h = Self::empty(m, class_size);
        for c in 0..m {
            for b in 0..c {
                for a in 0..b {
                    let sizes = h.blocks[triple_rank(a, b, c)].sizes;
                    h.set_block(a, b, c, make(a, b, c, sizes))?;
                }
            }
        }
        Ok(h)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|P^{ij}|` for `i != j`.
    pub fn class_size(&self, i: usize, j: usize) -> usize {
        self.class_sizes[pair_rank(i.min(j), i.max(j))]
    }

    pub fn block(&self, i: usize, j: usize, k: usize) -> &AuxBlock {
        &self.blocks[triple_rank(i, j, k)]
    }

    pub fn set_block(&mut self, i: usize, j: usize, k: usize, block: AuxBlock) -> Result<()> {
        if !(i < j && j < k && k < self.m) {
            return Err(Error::invalid(format!("block ({i}, {j}, {k}) needs i < j < k < m")));
        }
        let slot = &mut self.blocks[triple_rank(i, j, k)];
        if slot.sizes != block.sizes {
            return Err(Error::invalid(format!(
                "block ({i}, {j}, {k}) has sizes {:?}, expected {:?}",
                block.sizes, slot.sizes
            )));
        }
        *slot = block;
        Ok(())
    }

    /// Whether the three class vertices form a triple. `verts` maps each of the
    /// three unordered index pairs to its class vertex.
    pub fn has_triple(&self, idx: [usize; 3], verts: impl Fn(usize, usize) -> usize) -> bool {
        let mut s = idx;
        s.sort_unstable();
        let [a, b, c] = s;
        self.block(a, b, c)
            .contains(verts(a, b), verts(a, c), verts(b, c))
    }
}

/// Indices `i1 < i2 < i3`, a fourth index `i4`, and six class vertices such
/// that `P^12 P^14 P^24`, `P^13 P^14 P^34` and `P^23 P^24 P^34` are triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeTriples {
    pub indices: [usize; 4],
    /// Vertices in classes `P^12, P^13, P^23, P^14, P^24, P^34`.
    pub vertices: [usize; 6],
    /// `i4` is the largest or smallest of the four indices.
    pub apex_extreme: bool,
}

/// Exhaustive search, preferring an extreme `i4`: first `i4` above the other
/// three, then below, then in between. Lexicographic within each stage.
pub fn find_three_triples(a: &AuxHypergraph) -> Result<Option<ThreeTriples>> {
    let m = a.m;
    if m > THREE_TRIPLES_MAX_M {
        return Err(Error::Refused(format!(
            "three-triples search allows m <= {THREE_TRIPLES_MAX_M}, got {m}"
        )));
    }
    if let Some(&s) = a.class_sizes.iter().find(|&&s| s > THREE_TRIPLES_MAX_CLASS) {
        return Err(Error::Refused(format!(
            "three-triples search allows classes of at most {THREE_TRIPLES_MAX_CLASS}, got {s}"
        )));
    }
    let mut stages: [Vec<[usize; 4]>; 3] = Default::default();
    for i1 in 0..m {
        for i2 in i1 + 1..m {
            for i3 in i2 + 1..m {
                for i4 in 0..m {
                    if [i1, i2, i3].contains(&i4) {
                        continue;
                    }
                    let stage = if i4 > i3 {
                        0
                    } else if i4 < i1 {
                        1
                    } else {
                        2
                    };
                    stages[stage].push([i1, i2, i3, i4]);
                }
            }
        }
    }
    for (stage, configs) in stages.iter().enumerate() {
        for &idx in configs {
            if let Some(vertices) = search_config(a, idx) {
                return Ok(Some(ThreeTriples {
                    indices: idx,
                    vertices,
                    apex_extreme: stage < 2,
                }));
            }
        }
    }
    Ok(None)
}

fn search_config(a: &AuxHypergraph, [i1, i2, i3, i4]: [usize; 4]) -> Option<[usize; 6]> {
    let (s14, s24, s34) = (a.class_size(i1, i4), a.class_size(i2, i4), a.class_size(i3, i4));
    // completion[x][y]: least vertex of P^{xy} closing the triple with the
    // given P^{x4} and P^{y4} vertices.
    let complete = |x: usize, y: usize, vx: usize, vy: usize| -> Option<usize> {
        (0..a.class_size(x, y)).find(|&p| {
            a.has_triple([x, y, i4], |u, v| {
                let pair = (u.min(v), u.max(v));
                if pair == (x.min(y), x.max(y)) {
                    p
                } else if pair == (x.min(i4), x.max(i4)) {
                    vx
                } else {
                    vy
                }
            })
        })
    };
    let table = |x: usize, y: usize, sx: usize, sy: usize| -> Vec<Vec<Option<usize>>> {
        (0..sx)
            .map(|vx| (0..sy).map(|vy| complete(x, y, vx, vy)).collect())
            .collect()
    };
    let t12 = table(i1, i2, s14, s24);
    let t13 = table(i1, i3, s14, s34);
    let t23 = table(i2, i3, s24, s34);
    for v14 in 0..s14 {
        for v24 in 0..s24 {
            let Some(p12) = t12[v14][v24] else { continue };
            for v34 in 0..s34 {
                if let (Some(p13), Some(p23)) = (t13[v14][v34], t23[v24][v34]) {
                    return Some([p12, p13, p23, v14, v24, v34]);
                }
            }
        }
    }
    None
}
