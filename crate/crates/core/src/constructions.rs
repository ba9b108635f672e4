//! Seeded generators for the extremal constructions.
//!
//! Each generator has two layers: a builder that takes the underlying random
//! object explicitly (a [`Tournament`], a [`PairColouring`], a
//! [`TripleOrientation`]) and a seeded wrapper that draws that object through
//! [`crate::hash`]. Because every pair/triple is decided by hashing the seed
//! with that tuple alone, `induced(gen(n, s), 0..m) == gen(m, s)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hash::{bernoulli, coin, domain, hash_tuple, reduce};
use crate::hypergraph::{pair_rank, triple_rank, Hypergraph3, Hypergraph4, MAX_N3, MAX_N4};
use crate::io::AnyHypergraph;
use crate::rational::{rat, Rational};

pub const RED: u8 = 0;
pub const BLUE: u8 = 1;
pub const GREEN: u8 = 2;

fn check_n(n: usize, min: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "vertex count",
            value: n,
            cap,
        });
    }
    if n < min {
        return Err(Error::invalid(format!("n = {n} is below the minimum {min}")));
    }
    Ok(())
}

/// Colouring of the pairs of `0..n` with colours `0..num_colours`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColouring {
    n: usize,
    num_colours: usize,
    colours: Vec<u8>,
}

impl PairColouring {
    /// `colour(u, v)` is `hash(seed, PAIR_COLOURING, min, max)` reduced to
    /// `0..num_colours`.
    pub fn seeded(n: usize, num_colours: usize, seed: u64) -> Result<Self> {
        Self::from_fn(n, num_colours, |u, v| {
            reduce(
                hash_tuple(seed, domain::PAIR_COLOURING, &[u as u64, v as u64]),
                num_colours as u64,
            ) as u8
        })
    }

    /// Explicit colouring; `f` is called with `u < v`.
    pub fn from_fn(n: usize, num_colours: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        if num_colours == 0 || num_colours > 256 {
            return Err(Error::invalid(format!(
                "number of colours must be in 1..=256, got {num_colours}"
            )));
        }
        check_n(n, 0, MAX_N3)?;
        let mut colours = vec![0u8; n * n.saturating_sub(1) / 2];
        for v in 0..n {
            for u in 0..v {
                let c = f(u, v);
                if c as usize >= num_colours {
                    return Err(Error::invalid(format!("colour {c} out of range")));
                }
                colours[pair_rank(u, v)] = c;
            }
        }
        Ok(PairColouring {
            n,
            num_colours,
            colours,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> u8 {
        debug_assert!(u != v);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.colours[pair_rank(u, v)]
    }

    /// `(colour(x,y), colour(x,z), colour(y,z))` for `x < y < z`.
    #[inline]
    pub fn pattern(&self, x: usize, y: usize, z: usize) -> [u8; 3] {
        [self.colour(x, y), self.colour(x, z), self.colour(y, z)]
    }
}

/// A tournament on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    /// `forward[rank(u,v)]` for `u < v` is true iff the arc is `u -> v`.
    forward: Vec<bool>,
}

impl Tournament {
    /// Each arc direction is a fair coin `hash(seed, TOURNAMENT, u, v)`.
    pub fn seeded(n: usize, seed: u64) -> Result<Self> {
        Self::from_fn(n, |u, v| {
            coin(hash_tuple(seed, domain::TOURNAMENT, &[u as u64, v as u64]))
        })
    }

    /// `f(u, v)` with `u < v` returns whether the arc is `u -> v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_n(n, 0, MAX_N3)?;
        let mut forward = vec![false; n * n.saturating_sub(1) / 2];
        for v in 0..n {
            for u in 0..v {
                forward[pair_rank(u, v)] = f(u, v);
            }
        }
        Ok(Tournament { n, forward })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True iff the arc between `u` and `v` points from `u` to `v`.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        if u < v {
            self.forward[pair_rank(u, v)]
        } else {
            !self.forward[pair_rank(v, u)]
        }
    }

    pub fn out_degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| v != u && self.beats(u, v)).count()
    }

    /// True iff `{a, b, c}` spans a directed 3-cycle.
    #[inline]
    pub fn is_cyclic(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.beats(a, b);
        ab == self.beats(b, c) && ab == self.beats(c, a)
    }
}

/// A choice of one of the two cyclic orientations for every triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOrientation {
    n: usize,
    /// For `a < b < c`, true means `a -> b -> c -> a`, false means
    /// `a -> c -> b -> a`.
    ascending: Vec<bool>,
}

impl TripleOrientation {
    /// Uniform random orientation: a fair coin `hash(seed, TRIPLE_ORIENTATION, a, b, c)`.
    pub fn seeded(n: usize, seed: u64) -> Result<Self> {
        Self::from_fn(n, |a, b, c| {
            coin(hash_tuple(
                seed,
                domain::TRIPLE_ORIENTATION,
                &[a as u64, b as u64, c as u64],
            ))
        })
    }

    /// `f(a, b, c)` with `a < b < c` returns whether the orientation is the
    /// cycle `(a, b, c)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Result<Self> {
        check_n(n, 0, MAX_N4)?;
        let count = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
        let mut ascending = vec![false; count];
        for c in 0..n {
            for b in 0..c {
                for a in 0..b {
                    ascending[triple_rank(a, b, c)] = f(a, b, c);
                }
            }
        }
        Ok(TripleOrientation { n, ascending })
    }

    /// Orientation derived from a tournament: each triple gets the cyclic
    /// orientation that agrees with its three arcs either once or three times.
    ///
    /// With `ab`, `bc`, `ac` meaning the arcs `a->b`, `b->c`, `a->c` are present
    /// (`a < b < c`), agreement with `(a,b,c)` is `ab + bc + !ac`:
    ///
    /// ```text
    ///  ab bc ac | agree(a,b,c) | orientation
    ///   0  0  0 |      1       | (a,b,c)
    ///   0  0  1 |      0       | (a,c,b)   cyclic a->c->b->a
    ///   0  1  0 |      2       | (a,c,b)
    ///   0  1  1 |      1       | (a,b,c)
    ///   1  0  0 |      2       | (a,c,b)
    ///   1  0  1 |      1       | (a,b,c)
    ///   1  1  0 |      3       | (a,b,c)   cyclic a->b->c->a
    ///   1  1  1 |      2       | (a,c,b)   transitive, a->c->b agrees only on a->c
    /// ```
    pub fn leader_tan(t: &Tournament) -> Result<Self> {
        Self::from_fn(t.n(), |a, b, c| {
            let agree = t.beats(a, b) as u8 + t.beats(b, c) as u8 + t.beats(c, a) as u8;
            agree % 2 == 1
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the sorted triple `a < b < c` is oriented as `(a, b, c)`.
    #[inline]
    pub fn is_ascending(&self, a: usize, b: usize, c: usize) -> bool {
        self.ascending[triple_rank(a, b, c)]
    }

    /// Whether the oriented triple containing `p` and `q` (with third vertex
    /// `r`) traverses the pair as `p -> q`.
    #[inline]
    pub fn traverses(&self, p: usize, q: usize, r: usize) -> bool {
        let mut t = [p, q, r];
        t.sort_unstable();
        let asc = self.is_ascending(t[0], t[1], t[2]);
        // The ascending cycle traverses (t0,t1) and (t1,t2) upwards and
        // (t0,t2) downwards.
        let outer = (p.min(q), p.max(q)) == (t[0], t[2]);
        let upward = asc != outer;
        upward == (p < q)
    }

    /// The four-set is an edge iff each of its six pairs is traversed in
    /// opposite directions by the two triples of the set containing it.
    pub fn opposite_traversal(&self, q: [usize; 4]) -> bool {
        for i in 0..4 {
            for j in i + 1..4 {
                let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).map(|k| q[k]).collect();
                let d1 = self.traverses(q[i], q[j], others[0]);
                let d2 = self.traverses(q[i], q[j], others[1]);
                if d1 == d2 {
                    return false;
                }
            }
        }
        true
    }
}

/// Which ordered colour patterns `(c(x,y), c(x,z), c(y,z))`, `x < y < z`,
/// make a triple an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    colours: usize,
    allowed: Vec<bool>,
}

impl RuleTable {
    /// The `S_k`-free rule with `k - 1` colours: a pattern `(a, b, c)` is
    /// allowed iff `a == c != b`, or it is rainbow and `c != a + 1 (mod k-1)`.
    pub fn sk_free(k: usize) -> Result<Self> {
        if k < 4 {
            return Err(Error::invalid(format!("S_k construction needs k >= 4, got {k}")));
        }
        let q = k - 1;
        if q > 256 {
            return Err(Error::TooLarge {
                what: "k",
                value: k,
                cap: 257,
            });
        }
        let mut allowed = vec![false; q * q * q];
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let repeated_outer = a == c && a != b;
                    let rainbow = a != b && a != c && b != c;
                    allowed[(a * q + b) * q + c] = repeated_outer || (rainbow && c != (a + 1) % q);
                }
            }
        }
        Ok(RuleTable { colours: q, allowed })
    }

    pub fn from_patterns(colours: usize, patterns: &[[u8; 3]]) -> Result<Self> {
        let mut allowed = vec![false; colours * colours * colours];
        for p in patterns {
            if p.iter().any(|&c| c as usize >= colours) {
                return Err(Error::invalid(format!("pattern {p:?} uses a colour >= {colours}")));
            }
            let [a, b, c] = p.map(|x| x as usize);
            allowed[(a * colours + b) * colours + c] = true;
        }
        Ok(RuleTable { colours, allowed })
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    #[inline]
    pub fn allows(&self, p: [u8; 3]) -> bool {
        let q = self.colours;
        self.allowed[(p[0] as usize * q + p[1] as usize) * q + p[2] as usize]
    }

    pub fn count(&self) -> usize {
        self.allowed.iter().filter(|&&b| b).count()
    }

    /// Allowed patterns in lexicographic order.
    pub fn patterns(&self) -> Vec<[u8; 3]> {
        let q = self.colours;
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if self.allowed[(a * q + b) * q + c] {
                        out.push([a as u8, b as u8, c as u8]);
                    }
                }
            }
        }
        out
    }
}

/// Expected allowed-pattern count `(k-1)(k-2) + (k-1)(k-3)^2`.
pub fn sk_pattern_count(k: usize) -> usize {
    (k - 1) * (k - 2) + (k - 1) * (k - 3) * (k - 3)
}

/// `(k^2 - 5k + 7) / (k - 1)^2`.
pub fn sk_density(k: usize) -> Rational {
    let k = k as i128;
    rat(k * k - 5 * k + 7, (k - 1) * (k - 1))
}

/// All triples `x < y < z` with `keep(x, y, z)`, in lexicographic order.
fn collect_triples<F>(n: usize, keep: F) -> Vec<[u32; 3]>
where
    F: Fn(usize, usize, usize) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for y in x + 1..n {
                for z in y + 1..n {
                    if keep(x, y, z) {
                        out.push([x as u32, y as u32, z as u32]);
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

fn collect_quads<F>(n: usize, keep: F) -> Vec<[u32; 4]>
where
    F: Fn([usize; 4]) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if keep([a, b, c, d]) {
                            out.push([a as u32, b as u32, c as u32, d as u32]);
                        }
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Cyclic triangles of a tournament.
pub fn tournament_hypergraph(t: &Tournament) -> Result<Hypergraph3> {
    Hypergraph3::from_sorted_unique(t.n(), collect_triples(t.n(), |a, b, c| t.is_cyclic(a, b, c)))
}

pub fn gen_tournament_3hg(n: usize, seed: u64) -> Result<Hypergraph3> {
    check_n(n, 4, MAX_N3)?;
    tournament_hypergraph(&Tournament::seeded(n, seed)?)
}

/// `{x<y<z}` is an edge iff `phi(x,y) != phi(x,z)`.
pub fn colouring_kk_free(phi: &PairColouring) -> Result<Hypergraph3> {
    Hypergraph3::from_sorted_unique(
        phi.n(),
        collect_triples(phi.n(), |x, y, z| phi.colour(x, y) != phi.colour(x, z)),
    )
}

/// `K_k`-free construction from a random `(k-2)`-colouring of the pairs.
pub fn gen_colouring_kk_free(n: usize, k: usize, seed: u64) -> Result<Hypergraph3> {
    if k < 3 {
        return Err(Error::invalid(format!("clique construction needs k >= 3, got {k}")));
    }
    check_n(n, 0, MAX_N3)?;
    colouring_kk_free(&PairColouring::seeded(n, k - 2, seed)?)
}

/// Triples whose three pairs are not monochromatic.
pub fn party_of_six(phi: &PairColouring) -> Result<Hypergraph3> {
    Hypergraph3::from_sorted_unique(
        phi.n(),
        collect_triples(phi.n(), |x, y, z| {
            let [a, b, c] = phi.pattern(x, y, z);
            !(a == b && b == c)
        }),
    )
}

pub fn gen_party_of_six(n: usize, seed: u64) -> Result<Hypergraph3> {
    check_n(n, 0, MAX_N3)?;
    party_of_six(&PairColouring::seeded(n, 2, seed)?)
}

/// `{i<j<k}` is an edge iff the pattern is exactly (red, blue, green).
pub fn rainbow(psi: &PairColouring) -> Result<Hypergraph3> {
    if psi.num_colours() != 3 {
        return Err(Error::invalid("rainbow construction needs a 3-colouring"));
    }
    Hypergraph3::from_sorted_unique(
        psi.n(),
        collect_triples(psi.n(), |x, y, z| psi.pattern(x, y, z) == [RED, BLUE, GREEN]),
    )
}

pub fn gen_rainbow_1_27(n: usize, seed: u64) -> Result<Hypergraph3> {
    check_n(n, 0, MAX_N3)?;
    rainbow(&PairColouring::seeded(n, 3, seed)?)
}

/// Edges are the triples whose ordered pattern the table allows.
pub fn pattern_hypergraph(psi: &PairColouring, table: &RuleTable) -> Result<Hypergraph3> {
    if psi.num_colours() != table.colours() {
        return Err(Error::invalid(format!(
            "colouring has {} colours, rule table expects {}",
            psi.num_colours(),
            table.colours()
        )));
    }
    Hypergraph3::from_sorted_unique(
        psi.n(),
        collect_triples(psi.n(), |x, y, z| table.allows(psi.pattern(x, y, z))),
    )
}

/// The `S_k`-free construction together with the colouring behind it.
pub fn gen_sk_free_with_colouring(n: usize, k: usize, seed: u64) -> Result<(Hypergraph3, PairColouring)> {
    let table = RuleTable::sk_free(k)?;
    check_n(n, 0, MAX_N3)?;
    let psi = PairColouring::seeded(n, k - 1, seed)?;
    Ok((pattern_hypergraph(&psi, &table)?, psi))
}

pub fn gen_sk_free(n: usize, k: usize, seed: u64) -> Result<Hypergraph3> {
    Ok(gen_sk_free_with_colouring(n, k, seed)?.0)
}

/// 4-sets whose six pairs are traversed in opposite directions.
pub fn oriented_4hg(o: &TripleOrientation) -> Result<Hypergraph4> {
    Hypergraph4::from_sorted_unique(o.n(), collect_quads(o.n(), |q| o.opposite_traversal(q)))
}

pub fn gen_oriented_4hg(n: usize, seed: u64) -> Result<Hypergraph4> {
    check_n(n, 4, MAX_N4)?;
    oriented_4hg(&TripleOrientation::seeded(n, seed)?)
}

pub fn gen_leader_tan(n: usize, seed: u64) -> Result<Hypergraph4> {
    check_n(n, 4, MAX_N4)?;
    let t = Tournament::seeded(n, seed)?;
    oriented_4hg(&TripleOrientation::leader_tan(&t)?)
}

/// Binomial random 3-graph: each triple independently with probability `p`.
pub fn gen_random_3hg(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }
    check_n(n, 0, MAX_N3)?;
    Hypergraph3::from_sorted_unique(
        n,
        collect_triples(n, |a, b, c| {
            bernoulli(
                hash_tuple(seed, domain::RANDOM_3GRAPH, &[a as u64, b as u64, c as u64]),
                p,
            )
        }),
    )
}

/// The named constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionKind {
    Tournament3,
    ColouringKk,
    Party6,
    Rainbow27,
    SkFree,
    Oriented4,
    LeaderTan,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 7] = [
        ConstructionKind::Tournament3,
        ConstructionKind::ColouringKk,
        ConstructionKind::Party6,
        ConstructionKind::Rainbow27,
        ConstructionKind::SkFree,
        ConstructionKind::Oriented4,
        ConstructionKind::LeaderTan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Tournament3 => "tournament3",
            ConstructionKind::ColouringKk => "colouring-kk",
            ConstructionKind::Party6 => "party6",
            ConstructionKind::Rainbow27 => "rainbow27",
            ConstructionKind::SkFree => "sk-free",
            ConstructionKind::Oriented4 => "oriented4",
            ConstructionKind::LeaderTan => "leader-tan",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ConstructionKind::Oriented4 | ConstructionKind::LeaderTan => 4,
            _ => 3,
        }
    }

    pub fn needs_k(self) -> bool {
        matches!(self, ConstructionKind::ColouringKk | ConstructionKind::SkFree)
    }

    /// Limit density of the construction, where one is known exactly.
    pub fn expected_density(self, k: Option<usize>) -> Option<Rational> {
        match self {
            ConstructionKind::Tournament3 => Some(rat(1, 4)),
            ConstructionKind::ColouringKk => k.filter(|&k| k >= 3).map(|k| rat(k as i128 - 3, k as i128 - 2)),
            ConstructionKind::Party6 => Some(rat(3, 4)),
            ConstructionKind::Rainbow27 => Some(rat(1, 27)),
            ConstructionKind::SkFree => k.filter(|&k| k >= 4).map(sk_density),
            ConstructionKind::Oriented4 => Some(rat(1, 8)),
            ConstructionKind::LeaderTan => Some(rat(1, 4)),
        }
    }

    pub fn generate(self, n: usize, k: Option<usize>, seed: u64) -> Result<AnyHypergraph> {
        let need_k = || k.ok_or_else(|| Error::invalid(format!("{} needs --k", self.name())));
        Ok(match self {
            ConstructionKind::Tournament3 => AnyHypergraph::Three(gen_tournament_3hg(n, seed)?),
            ConstructionKind::ColouringKk => AnyHypergraph::Three(gen_colouring_kk_free(n, need_k()?, seed)?),
            ConstructionKind::Party6 => AnyHypergraph::Three(gen_party_of_six(n, seed)?),
            ConstructionKind::Rainbow27 => AnyHypergraph::Three(gen_rainbow_1_27(n, seed)?),
            ConstructionKind::SkFree => AnyHypergraph::Three(gen_sk_free(n, need_k()?, seed)?),
            ConstructionKind::Oriented4 => AnyHypergraph::Four(gen_oriented_4hg(n, seed)?),
            ConstructionKind::LeaderTan => AnyHypergraph::Four(gen_leader_tan(n, seed)?),
        })
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown construction {s:?}")))
    }
}
