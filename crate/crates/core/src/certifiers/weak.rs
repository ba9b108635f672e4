use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_density, exact_limit, mask_to_vec, shard_bits, DeviationKind, DeviationReport,
    DeviationWitness, Method, Mode, WEAK_EXACT_CAP, WEAK_EXACT_HARD_CAP,
};
use crate::bitset::{intersection_count, Bitset};
use crate::error::Result;
use crate::hash::derive_seed;
use crate::hypergraph::Hypergraph3;
use crate::rational::{binom, rat, Rational};

/// Maximum over `U` of `|e(U) - d C(|U|, 3)|`. `d` defaults to the density
/// of `h`.
pub fn weak_deviation(h: &Hypergraph3, d: Option<Rational>, mode: Mode) -> Result<DeviationReport> {
    let d = d.unwrap_or_else(|| h.density().exact);
    check_density(&d)?;
    let (p, q) = (*d.numer(), *d.denom());
    let n = h.n();
    let norm = (n as i128).pow(3);
    match mode {
        Mode::Exact { cap } => {
            exact_limit("weak deviation", n, cap, WEAK_EXACT_CAP, WEAK_EXACT_HARD_CAP)?;
            let (best, mask) = exact(h, p, q);
            let witness = DeviationWitness {
                sets: vec![mask_to_vec(mask)],
                pairs: Vec::new(),
            };
            Ok(DeviationReport::new(
                DeviationKind::Weak,
                n,
                d,
                rat(best, q),
                norm,
                witness,
                Method::Exact,
            ))
        }
        Mode::Search { restarts, seed } => {
            let restarts = restarts.max(1);
            let runs: Vec<(i128, Bitset)> = (0..restarts)
                .into_par_iter()
                .map(|r| climb(h, p, q, derive_seed(seed, r as u64)))
                .collect();
            let (_, set) = runs
                .into_iter()
                .reduce(|a, b| if b.0 > a.0 { b } else { a })
                .expect("at least one restart");
            // Re-derive the value from the witness alone.
            let e = h.count_in_set(&set) as i128;
            let s = set.count() as u64;
            let best = (q * e - p * binom(s, 3) as i128).abs();
            let witness = DeviationWitness {
                sets: vec![set.to_vec()],
                pairs: Vec::new(),
            };
            Ok(DeviationReport::new(
                DeviationKind::Weak,
                n,
                d,
                rat(best, q),
                norm,
                witness,
                Method::LocalSearch,
            )
            .with_search(restarts, seed))
        }
    }
}

/// Gray-code walk over all subsets, sharded on the top bits. Returns the
/// best `|q e(U) - p C(|U|,3)|` and the least mask attaining it.
fn exact(h: &Hypergraph3, p: i128, q: i128) -> (i128, u64) {
    let n = h.n();
    if n == 0 {
        return (0, 0);
    }
    // lm[v * n + x]: link of {v, x} as a mask.
    let mut lm = vec![0u64; n * n];
    for v in 0..n {
        for x in 0..n {
            if v != x {
                lm[v * n + x] = h.link_row(v, x)[0];
            }
        }
    }
    let c3: Vec<i128> = (0..=n as u64).map(|s| binom(s, 3) as i128).collect();
    // Edges {v, x, y} with x, y in `set`, for v outside `set`.
    let gain = |v: usize, set: u64| -> i128 {
        let row = &lm[v * n..(v + 1) * n];
        let mut t = 0u32;
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            t += (row[x] & set).count_ones();
        }
        (t / 2) as i128
    };
    let b = shard_bits(n);
    let low = n - b;
    (0..1u64 << b)
        .into_par_iter()
        .map(|t| {
            let mut u = t << low;
            let mut e = h
                .edges()
                .iter()
                .filter(|ed| ed.iter().all(|&x| u >> x & 1 == 1))
                .count() as i128;
            let mut s = u.count_ones() as usize;
            let mut best = ((q * e - p * c3[s]).abs(), u);
            for i in 1..1u64 << low {
                let v = i.trailing_zeros() as usize;
                let bit = 1u64 << v;
                if u & bit != 0 {
                    u ^= bit;
                    e -= gain(v, u);
                    s -= 1;
                } else {
                    e += gain(v, u);
                    u |= bit;
                    s += 1;
                }
                let a = (q * e - p * c3[s]).abs();
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
        )
}

/// Steepest single-vertex toggle from a random start, keeping for every
/// vertex `w` the number of edges `{w, x, y}` with `x, y` in `U \ {w}`.
fn climb(h: &Hypergraph3, p: i128, q: i128, seed: u64) -> (i128, Bitset) {
    let n = h.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let incl: f64 = rng.gen_range(0.05..0.95);
    let mut set = Bitset::from_indices(n, (0..n).filter(|_| rng.gen_bool(incl)));
    let mut c = vec![0i128; n];
    for (w, cw) in c.iter_mut().enumerate() {
        let mut t = 0;
        for x in set.iter().filter(|&x| x != w) {
            t += intersection_count(h.link_row(w, x), set.words());
        }
        *cw = (t / 2) as i128;
    }
    let mut e = h.count_in_set(&set) as i128;
    let mut s = set.count() as u64;
    let value = |e: i128, s: u64| (q * e - p * binom(s, 3) as i128).abs();
    let mut cur = value(e, s);
    for _ in 0..4 * n + 4 {
        let mut pick: Option<(i128, usize)> = None;
        for v in 0..n {
            let a = if set.contains(v) {
                value(e - c[v], s - 1)
            } else {
                value(e + c[v], s + 1)
            };
            if a > cur && pick.is_none_or(|(b, _)| a > b) {
                pick = Some((a, v));
            }
        }
        let Some((a, v)) = pick else { break };
        let adding = !set.contains(v);
        if adding {
            e += c[v];
            s += 1;
            set.insert(v);
        } else {
            e -= c[v];
            s -= 1;
            set.remove(v);
        }
        let mut others = set.clone();
        others.remove(v);
        for (w, cw) in c.iter_mut().enumerate() {
            if w != v {
                let delta = intersection_count(h.link_row(w, v), others.words()) as i128;
                *cw += if adding { delta } else { -delta };
            }
        }
        cur = a;
    }
    (cur, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let k = Hypergraph3::complete(8).unwrap();
        let r = weak_deviation(&k, Some(rat(1, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(0, 1));
        let e = Hypergraph3::empty(8).unwrap();
        let r = weak_deviation(&e, Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(0, 1));
        assert_eq!(r.witness.sets, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn single_edge() {
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let r = weak_deviation(&h, Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(1, 1));
        assert_eq!(r.witness.sets, vec![vec![0, 1, 2]]);
        assert_eq!(r.eta_exact, rat(1, 27));
    }

    #[test]
    fn refuses_above_cap() {
        let h = Hypergraph3::empty(25).unwrap();
        assert!(weak_deviation(&h, None, Mode::exact()).unwrap_err().is_refusal());
        assert!(weak_deviation(&h, None, Mode::Exact { cap: Some(26) }).is_ok());
    }

    #[test]
    fn search_is_lower_bound() {
        let h = crate::constructions::gen_random_3hg(11, 0.4, 3).unwrap();
        let d = Some(rat(2, 5));
        let ex = weak_deviation(&h, d, Mode::exact()).unwrap();
        let se = weak_deviation(&h, d, Mode::search(1)).unwrap();
        assert!(se.max_deviation <= ex.max_deviation);
        assert_eq!(se.method, Method::LocalSearch);
    }
}
