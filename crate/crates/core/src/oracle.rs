//! Slow reference implementations. Each one recounts from the definitions
//! with plain loops and shares no counting code with the fast paths, so tests
//! can compare the two.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::hypergraph::{Hypergraph3, Hypergraph4};
use crate::multipartite::MultipartiteGraph;
use crate::rational::{rat, Rational};

fn in_mask(mask: u64, v: usize) -> bool {
    mask >> v & 1 == 1
}

fn limit(what: &str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Refused(format!("oracle {what} supports n <= {cap}, got {n}")));
    }
    Ok(())
}

/// `e(U)` by scanning the edge list.
pub fn e_u(h: &Hypergraph3, mask: u64) -> u64 {
    h.edges()
        .iter()
        .filter(|e| e.iter().all(|&v| in_mask(mask, v as usize)))
        .count() as u64
}

fn c3(s: u64) -> i128 {
    let s = s as i128;
    s * (s - 1) * (s - 2) / 6
}

/// `max_U |e(U) - d C(|U|, 3)|` over all `2^n` subsets.
pub fn weak_deviation(h: &Hypergraph3, d: &Rational) -> Result<Rational> {
    limit("weak deviation", h.n(), 20)?;
    let mut best = rat(0, 1);
    for mask in 0..1u64 << h.n() {
        let dev = (rat(e_u(h, mask) as i128, 1) - d * c3(mask.count_ones() as u64)).abs();
        if dev > best {
            best = dev;
        }
    }
    Ok(best)
}

fn pairs_of(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            out.push((x, y));
        }
    }
    out
}

/// `e(U, X)`: ordered pairs `(u, {x, x'})`, counted one by one.
fn e_ux(h: &Hypergraph3, u: u64, pairs: &[(usize, usize)], x: u64) -> i128 {
    let mut t = 0;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if !in_mask(x, i) {
            continue;
        }
        for w in 0..h.n() {
            if in_mask(u, w) && h.has_edge(w, a, b) {
                t += 1;
            }
        }
    }
    t
}

/// `max_{U, X} |e(U, X) - d |U| |X||` over every vertex set and every pair
/// set. Feasible for `n <= 6`.
pub fn pair_deviation_full(h: &Hypergraph3, d: &Rational) -> Result<Rational> {
    limit("full pair deviation", h.n(), 6)?;
    let pairs = pairs_of(h.n());
    let mut best = rat(0, 1);
    for u in 0..1u64 << h.n() {
        for x in 0..1u64 << pairs.len() {
            let vol = (u.count_ones() * x.count_ones()) as i128;
            let dev = (rat(e_ux(h, u, &pairs, x), 1) - d * vol).abs();
            if dev > best {
                best = dev;
            }
        }
    }
    Ok(best)
}

/// Same maximum for `n <= 8`. For each `U` the pair set is split into two
/// halves, every subset of each half is evaluated from scratch, and the best
/// combination of the two half-sums is taken.
pub fn pair_deviation_split(h: &Hypergraph3, d: &Rational) -> Result<Rational> {
    limit("split pair deviation", h.n(), 8)?;
    let pairs = pairs_of(h.n());
    let (left, right) = pairs.split_at(pairs.len() / 2);
    let mut best = rat(0, 1);
    for u in 0..1u64 << h.n() {
        let s = u.count_ones() as i128;
        let extremes = |half: &[(usize, usize)]| {
            let (mut lo, mut hi) = (rat(0, 1), rat(0, 1));
            for x in 0..1u64 << half.len() {
                let v = rat(e_ux(h, u, half, x), 1) - d * (s * x.count_ones() as i128);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            (lo, hi)
        };
        let (l0, l1) = extremes(left);
        let (r0, r1) = extremes(right);
        best = best.max((l1 + r1).abs()).max((l0 + r0).abs());
    }
    Ok(best)
}

/// Copies of `K4-` with their apex, by checking every 4-set and every apex.
pub fn count_k4_minus(h: &Hypergraph3) -> u64 {
    let n = h.n();
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    for &x in &q {
                        if is_apex(h, x, q) {
                            total += 1;
                        }
                    }
                }
            }
        }
    }
    total
}

fn is_apex(h: &Hypergraph3, x: usize, q: [usize; 4]) -> bool {
    let o: Vec<usize> = q.into_iter().filter(|&v| v != x).collect();
    h.has_edge(x, o[0], o[1]) && h.has_edge(x, o[0], o[2]) && h.has_edge(x, o[1], o[2])
}

/// Least 4-set holding a `K4-` and its least admissible apex.
pub fn find_k4_minus(h: &Hypergraph3, ordered: bool) -> Option<([usize; 4], usize)> {
    let n = h.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    for (i, &x) in q.iter().enumerate() {
                        if ordered && i != 0 && i != 3 {
                            continue;
                        }
                        if is_apex(h, x, q) {
                            return Some((q, x));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Least `(u, v, x, y, z)` with `{u,v,x,y}`, `{u,v,x,z}`, `{u,v,y,z}` edges.
pub fn find_f4(h: &Hypergraph4) -> Option<[usize; 5]> {
    let n = h.n();
    for u in 0..n {
        for v in u + 1..n {
            for x in 0..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let t = [u, v, x, y, z];
                        if (2..5).any(|i| t[..i].contains(&t[i])) {
                            continue;
                        }
                        if h.has_edge([u, v, x, y]) && h.has_edge([u, v, x, z]) && h.has_edge([u, v, y, z]) {
                            return Some(t);
                        }
                    }
                }
            }
        }
    }
    None
}

/// `max_{X', Y'} |e(X', Y') - d2 |X'| |Y'||` over both power sets.
pub fn bipartite_deviation(g: &BipartiteGraph, d2: &Rational) -> Result<Rational> {
    limit("bipartite deviation", g.left() + g.right(), 22)?;
    let mut best = rat(0, 1);
    for xs in 0..1u64 << g.left() {
        for ys in 0..1u64 << g.right() {
            let mut e = 0;
            for x in 0..g.left() {
                for y in 0..g.right() {
                    if in_mask(xs, x) && in_mask(ys, y) && g.has_edge(x, y) {
                        e += 1;
                    }
                }
            }
            let vol = (xs.count_ones() * ys.count_ones()) as i128;
            best = best.max((rat(e, 1) - d2 * vol).abs());
        }
    }
    Ok(best)
}

/// Whether some ordering and some colouring of all pairs satisfies the
/// red/blue/green edge rule, trying all `f! * 3^C(f,2)` combinations.
pub fn vanishing_condition(f: &Hypergraph3) -> Result<bool> {
    limit("vanishing condition", f.n(), 5)?;
    let n = f.n();
    let pairs = pairs_of(n);
    let total = 3u64.pow(pairs.len() as u32);
    let mut orderings = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut orderings);
    for ord in &orderings {
        let mut pos = vec![0; n];
        for (i, &v) in ord.iter().enumerate() {
            pos[v] = i;
        }
        for code in 0..total {
            let colour_of = |a: usize, b: usize| {
                let (a, b) = (a.min(b), a.max(b));
                let idx = pairs.iter().position(|&p| p == (a, b)).expect("pair");
                code / 3u64.pow(idx as u32) % 3
            };
            let ok = f.edge_iter().all(|e| {
                let mut t = e;
                t.sort_by_key(|&v| pos[v]);
                colour_of(t[0], t[1]) == 0 && colour_of(t[0], t[2]) == 1 && colour_of(t[1], t[2]) == 2
            });
            if ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Triangles of a tripartite graph by a triple loop over the parts.
pub fn triangle_count(p: &MultipartiteGraph) -> u64 {
    let s = p.sizes();
    let mut t = 0;
    for a in 0..s[0] {
        for b in 0..s[1] {
            for c in 0..s[2] {
                let (x, y, z) = (p.global(0, a), p.global(1, b), p.global(2, c));
                if p.has_edge(x, y) && p.has_edge(x, z) && p.has_edge(y, z) {
                    t += 1;
                }
            }
        }
    }
    t
}

/// `sum_{x in V_i} d_j(x)^2` by pairwise adjacency checks.
pub fn mean_square_sum(p: &MultipartiteGraph, i: usize, j: usize) -> u64 {
    let s = p.sizes();
    (0..s[i])
        .map(|a| {
            let d = (0..s[j])
                .filter(|&b| p.has_edge(p.global(i, a), p.global(j, b)))
                .count() as u64;
            d * d
        })
        .sum()
}

/// `e(X, Y, Z)` over ordered triples.
pub fn e_xyz(h: &Hypergraph3, x: &[usize], y: &[usize], z: &[usize]) -> u64 {
    let mut t = 0;
    for &a in x {
        for &b in y {
            for &c in z {
                if h.has_edge(a, b, c) {
                    t += 1;
                }
            }
        }
    }
    t
}
