//! Pair form: `e(U, X)` counts `(u, {x, x'})` with `u` in `U`, `{x, x'}` in
//! the pair set `X` and `{u, x, x'}` an edge. Since
//! `e(U, X) - d |U| |X| = sum_{p in X} (deg_U(p) - d |U|)`, the best `X` for a
//! fixed `U` takes every pair of one residual sign, so only `U` is searched.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_density, exact_limit, mask_to_vec, shard_bits, DeviationKind, DeviationReport,
    DeviationWitness, Method, Mode, PAIR_EXACT_CAP, PAIR_EXACT_HARD_CAP,
};
use crate::bitset::{intersection_count, Bitset};
use crate::error::Result;
use crate::hash::derive_seed;
use crate::hypergraph::Hypergraph3;
use crate::rational::{rat, Rational};

pub fn pair_deviation(h: &Hypergraph3, d: Option<Rational>, mode: Mode) -> Result<DeviationReport> {
    let d = d.unwrap_or_else(|| h.density().exact);
    check_density(&d)?;
    let (p, q) = (*d.numer(), *d.denom());
    let n = h.n();
    let norm = (n as i128).pow(3);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .collect();
    let (method, set) = match mode {
        Mode::Exact { cap } => {
            exact_limit("pair deviation", n, cap, PAIR_EXACT_CAP, PAIR_EXACT_HARD_CAP)?;
            let mask = exact(h, &pairs, p, q);
            (Method::Exact, Bitset::from_indices(n, mask_to_vec(mask)))
        }
        Mode::Search { restarts, seed } => {
            let restarts = restarts.max(1);
            let runs: Vec<(i128, Bitset)> = (0..restarts)
                .into_par_iter()
                .map(|r| climb(h, &pairs, p, q, derive_seed(seed, r as u64)))
                .collect();
            let best = runs
                .into_iter()
                .reduce(|a, b| if b.0 > a.0 { b } else { a })
                .expect("at least one restart");
            (Method::LocalSearch, best.1)
        }
    };
    let (value, xs) = sign_optimal(h, &pairs, &set, p, q);
    let witness = DeviationWitness {
        sets: vec![set.to_vec()],
        pairs: xs,
    };
    let report = DeviationReport::new(
        DeviationKind::Pair,
        n,
        d,
        rat(value, q),
        norm,
        witness,
        method,
    );
    Ok(match mode {
        Mode::Search { restarts, seed } => report.with_search(restarts.max(1), seed),
        Mode::Exact { .. } => report,
    })
}

/// `max(sum of positive residuals, sum of negative residuals)` scaled by
/// `q`, and the pairs of the winning sign (positive on ties).
fn sign_optimal(
    h: &Hypergraph3,
    pairs: &[(usize, usize)],
    set: &Bitset,
    p: i128,
    q: i128,
) -> (i128, Vec<[usize; 2]>) {
    let s = set.count() as i128;
    let res: Vec<i128> = pairs
        .iter()
        .map(|&(u, v)| q * intersection_count(h.link_row(u, v), set.words()) as i128 - p * s)
        .collect();
    let pos: i128 = res.iter().filter(|&&r| r > 0).sum();
    let neg: i128 = -res.iter().filter(|&&r| r < 0).sum::<i128>();
    let positive = pos >= neg;
    let xs = pairs
        .iter()
        .zip(&res)
        .filter(|(_, &r)| if positive { r > 0 } else { r < 0 })
        .map(|(&(u, v), _)| [u, v])
        .collect();
    (pos.max(neg), xs)
}

fn exact(h: &Hypergraph3, pairs: &[(usize, usize)], p: i128, q: i128) -> u64 {
    let n = h.n();
    if n == 0 {
        return 0;
    }
    let lm: Vec<u64> = pairs.iter().map(|&(u, v)| h.link_row(u, v)[0]).collect();
    let b = shard_bits(n);
    let low = n - b;
    let (_, mask) = (0..1u64 << b)
        .into_par_iter()
        .map(|t| {
            let mut best = (-1i128, u64::MAX);
            for lo in 0..1u64 << low {
                let u = t << low | lo;
                let ps = p * u.count_ones() as i128;
                let (mut pos, mut neg) = (0i128, 0i128);
                for &l in &lm {
                    let r = q * (l & u).count_ones() as i128 - ps;
                    if r > 0 {
                        pos += r;
                    } else {
                        neg -= r;
                    }
                }
                let a = pos.max(neg);
                if a > best.0 {
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

fn climb(h: &Hypergraph3, pairs: &[(usize, usize)], p: i128, q: i128, seed: u64) -> (i128, Bitset) {
    let n = h.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let incl: f64 = rng.gen_range(0.05..0.95);
    let mut set = Bitset::from_indices(n, (0..n).filter(|_| rng.gen_bool(incl)));
    let mut cur = sign_optimal(h, pairs, &set, p, q).0;
    for _ in 0..2 * n + 2 {
        let mut pick: Option<(i128, usize)> = None;
        for v in 0..n {
            set.toggle(v);
            let a = sign_optimal(h, pairs, &set, p, q).0;
            set.toggle(v);
            if a > cur && pick.is_none_or(|(b, _)| a > b) {
                pick = Some((a, v));
            }
        }
        let Some((a, v)) = pick else { break };
        set.toggle(v);
        cur = a;
    }
    (cur, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_zero() {
        let h = Hypergraph3::empty(7).unwrap();
        let r = pair_deviation(&h, Some(rat(0, 1)), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, rat(0, 1));
    }

    #[test]
    fn complete_at_full_density() {
        // deg_U(p) - |U| = -|U & p|, so the best U is V: n(n-1) in total.
        for n in 3..9 {
            let h = Hypergraph3::complete(n).unwrap();
            let r = pair_deviation(&h, Some(rat(1, 1)), Mode::exact()).unwrap();
            assert_eq!(r.max_deviation, rat((n * (n - 1)) as i128, 1), "n = {n}");
        }
    }

    #[test]
    fn refuses_above_cap() {
        let h = Hypergraph3::empty(21).unwrap();
        assert!(pair_deviation(&h, None, Mode::exact()).unwrap_err().is_refusal());
    }
}
