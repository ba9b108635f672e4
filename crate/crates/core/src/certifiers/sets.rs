//! Deviations over tuples of vertex sets, by sampling plus local improvement.
//!
//! `e(X, Y, Z)` counts ordered triples `(x, y, z)` in `X x Y x Z` spanning an
//! edge, and `e(U_1, .., U_4)` the ordered 4-tuples. The value functions
//! accept any sets. The samplers draw pairwise disjoint sets: each vertex goes
//! to one set or to none, with per-sample random weights. On disjoint sets
//! inclusion-exclusion over `e(U)` gives
//! `|e(X,Y,Z) - d|X||Y||Z|| <= 7 max_U |e(U) - d C(|U|,3)|` exactly; with
//! overlaps the degenerate tuples add lower-order terms.

use std::sync::OnceLock;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_density, DeviationKind, DeviationReport, DeviationWitness, Method,
};
use crate::bitset::{intersection_count, Bitset};
use crate::error::{Error, Result};
use crate::hash::derive_seed;
use crate::hypergraph::{vertex_set, Hypergraph3, Hypergraph4};
use crate::rational::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Run first-improvement reassignment passes after each sample.
    pub improve: bool,
}

impl SampleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleConfig {
            samples,
            seed,
            improve: true,
        }
    }
}

const IMPROVE_PASSES: usize = 3;
const NONE: usize = usize::MAX;

/// `|e(X, Y, Z) - d |X| |Y| |Z||`.
pub fn xyz_value(h: &Hypergraph3, d: &Rational, x: &[usize], y: &[usize], z: &[usize]) -> Result<Rational> {
    let xs = vertex_set(h.n(), x)?;
    let ys = vertex_set(h.n(), y)?;
    let zs = vertex_set(h.n(), z)?;
    let e = h.count_xyz_sets(&xs, &ys, &zs) as i128;
    let vol = (xs.count() * ys.count() * zs.count()) as i128;
    Ok((rat(e, 1) - d * vol).abs())
}

/// Random assignment of every vertex to one of `k` sets or to none.
fn random_roles(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let weights: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    (0..n)
        .map(|_| {
            let mut t = rng.gen_range(0.0..total);
            for (r, w) in weights.iter().enumerate() {
                if t < *w {
                    return if r == k { NONE } else { r };
                }
                t -= w;
            }
            NONE
        })
        .collect()
}

fn roles_to_sets(roles: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut sets = vec![Vec::new(); k];
    for (v, &r) in roles.iter().enumerate() {
        if r != NONE {
            sets[r].push(v);
        }
    }
    sets
}

pub fn xyz_deviation(h: &Hypergraph3, d: Option<Rational>, cfg: &SampleConfig) -> Result<DeviationReport> {
    if cfg.samples == 0 {
        return Err(Error::invalid("xyz deviation needs at least one sample"));
    }
    let d = d.unwrap_or_else(|| h.density().exact);
    check_density(&d)?;
    let (p, q) = (*d.numer(), *d.denom());
    let n = h.n();
    let runs: Vec<(i128, Vec<usize>)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, i as u64));
            let roles = random_roles(n, 3, &mut rng);
            XyzState::new(h, roles, p, q).run(cfg.improve)
        })
        .collect();
    let (_, roles) = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one sample");
    let sets = roles_to_sets(&roles, 3);
    let value = xyz_value(h, &d, &sets[0], &sets[1], &sets[2])?;
    Ok(DeviationReport::new(
        DeviationKind::Xyz,
        n,
        d,
        value,
        (n as i128).pow(3),
        DeviationWitness {
            sets,
            pairs: Vec::new(),
        },
        Method::Sampled,
    )
    .with_samples(cfg.samples, cfg.seed))
}

struct XyzState<'a> {
    h: &'a Hypergraph3,
    roles: Vec<usize>,
    sets: [Bitset; 3],
    e: i128,
    p: i128,
    q: i128,
}

impl<'a> XyzState<'a> {
    fn new(h: &'a Hypergraph3, roles: Vec<usize>, p: i128, q: i128) -> Self {
        let n = h.n();
        let sets: [Bitset; 3] = std::array::from_fn(|r| {
            Bitset::from_indices(n, (0..n).filter(|&v| roles[v] == r))
        });
        let e = h.count_xyz_sets(&sets[0], &sets[1], &sets[2]) as i128;
        XyzState {
            h,
            roles,
            sets,
            e,
            p,
            q,
        }
    }

    fn value_with(&self, e: i128, sizes: [usize; 3]) -> i128 {
        (self.q * e - self.p * (sizes[0] * sizes[1] * sizes[2]) as i128).abs()
    }

    /// `gain[r]`: edges `{v, y, z}` with `y`, `z` in the two sets other than
    /// `r`, one in each. `v` must not be in any set.
    fn gains(&self, v: usize) -> [i128; 3] {
        let mut g = [0i128; 3];
        for (r, gr) in g.iter_mut().enumerate() {
            let (j, k) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for y in self.sets[j].iter() {
                *gr += intersection_count(self.h.link_row(v, y), self.sets[k].words()) as i128;
            }
        }
        g
    }

    fn run(mut self, improve: bool) -> (i128, Vec<usize>) {
        let mut sizes = [0usize; 3];
        for (r, s) in sizes.iter_mut().enumerate() {
            *s = self.sets[r].count();
        }
        let mut cur = self.value_with(self.e, sizes);
        if !improve {
            return (cur, self.roles);
        }
        for _ in 0..IMPROVE_PASSES {
            let mut moved = false;
            for v in 0..self.roles.len() {
                let old = self.roles[v];
                let mut base_e = self.e;
                let mut base_sizes = sizes;
                if old != NONE {
                    self.sets[old].remove(v);
                    base_sizes[old] -= 1;
                }
                let g = self.gains(v);
                if old != NONE {
                    base_e -= g[old];
                }
                let mut best = (cur, old);
                let mut options = vec![(self.value_with(base_e, base_sizes), NONE)];
                for r in 0..3 {
                    let mut s = base_sizes;
                    s[r] += 1;
                    options.push((self.value_with(base_e + g[r], s), r));
                }
                for (a, r) in options {
                    if r != old && a > best.0 {
                        best = (a, r);
                    }
                }
                let new = best.1;
                if new != NONE {
                    self.sets[new].insert(v);
                    base_sizes[new] += 1;
                    base_e += g[new];
                }
                if new != old {
                    moved = true;
                }
                self.roles[v] = new;
                self.e = base_e;
                sizes = base_sizes;
                cur = best.0;
            }
            if !moved {
                break;
            }
        }
        (cur, self.roles)
    }
}

/// `perm[m_a | m_b << 4 | m_c << 8 | m_d << 12]`: the permanent of the 0/1
/// matrix whose columns are the 4-bit membership masks of an edge's vertices,
/// i.e. the number of ways to place the edge in `U_1 x .. x U_4`.
fn permanent_table() -> &'static [u8] {
    static TABLE: OnceLock<Vec<u8>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let perms: Vec<[usize; 4]> = {
            let mut out = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let t = [a, b, c, d];
                            if (0..4).all(|i| t.contains(&i)) {
                                out.push(t);
                            }
                        }
                    }
                }
            }
            out
        };
        (0..1usize << 16)
            .map(|key| {
                let cols: [usize; 4] = std::array::from_fn(|i| key >> (4 * i) & 15);
                perms
                    .iter()
                    .filter(|s| (0..4).all(|i| cols[i] >> s[i] & 1 == 1))
                    .count() as u8
            })
            .collect()
    })
}

/// `|e(U_1, .., U_4) - d |U_1| |U_2| |U_3| |U_4||` over ordered 4-tuples.
pub fn quad_value(h: &Hypergraph4, d: &Rational, sets: [&[usize]; 4]) -> Result<Rational> {
    let n = h.n();
    let mut member = vec![0usize; n];
    let mut vol = 1i128;
    for (i, s) in sets.iter().enumerate() {
        let bs = vertex_set(n, s)?;
        vol *= bs.count() as i128;
        for v in bs.iter() {
            member[v] |= 1 << i;
        }
    }
    let table = permanent_table();
    let e: i128 = h
        .edge_iter()
        .map(|ed| {
            let key = ed
                .iter()
                .enumerate()
                .fold(0, |k, (i, &v)| k | member[v] << (4 * i));
            table[key] as i128
        })
        .sum();
    Ok((rat(e, 1) - d * vol).abs())
}

pub fn quad_vertex_deviation(h: &Hypergraph4, d: Option<Rational>, cfg: &SampleConfig) -> Result<DeviationReport> {
    if cfg.samples == 0 {
        return Err(Error::invalid("quad deviation needs at least one sample"));
    }
    let d = d.unwrap_or_else(|| h.density().exact);
    check_density(&d)?;
    let (p, q) = (*d.numer(), *d.denom());
    let n = h.n();
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            incident[v as usize].push(i as u32);
        }
    }
    let runs: Vec<(i128, Vec<usize>)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, i as u64));
            let roles = random_roles(n, 4, &mut rng);
            quad_run(h, &incident, roles, p, q, cfg.improve)
        })
        .collect();
    let (_, roles) = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one sample");
    let sets = roles_to_sets(&roles, 4);
    let value = quad_value(h, &d, [&sets[0], &sets[1], &sets[2], &sets[3]])?;
    Ok(DeviationReport::new(
        DeviationKind::Quad,
        n,
        d,
        value,
        (n as i128).pow(4),
        DeviationWitness {
            sets,
            pairs: Vec::new(),
        },
        Method::Sampled,
    )
    .with_samples(cfg.samples, cfg.seed))
}

fn quad_run(
    h: &Hypergraph4,
    incident: &[Vec<u32>],
    mut roles: Vec<usize>,
    p: i128,
    q: i128,
    improve: bool,
) -> (i128, Vec<usize>) {
    let mut sizes = [0usize; 4];
    for &r in &roles {
        if r != NONE {
            sizes[r] += 1;
        }
    }
    let transversal = |roles: &[usize], e: &[u32; 4]| {
        let mask = e.iter().fold(0u32, |m, &v| match roles[v as usize] {
            NONE => m | 1 << 4,
            r => m | 1 << r,
        });
        mask == 0b1111
    };
    let mut e = h.edges().iter().filter(|ed| transversal(&roles, ed)).count() as i128;
    let value = |e: i128, s: [usize; 4]| (q * e - p * (s[0] * s[1] * s[2] * s[3]) as i128).abs();
    let mut cur = value(e, sizes);
    if !improve {
        return (cur, roles);
    }
    for _ in 0..IMPROVE_PASSES {
        let mut moved = false;
        for v in 0..roles.len() {
            let old = roles[v];
            // gain[r]: edges at v whose other three vertices fill the other
            // three sets.
            let mut gain = [0i128; 4];
            for &ei in &incident[v] {
                let mut mask = 0u32;
                let mut ok = true;
                for &u in &h.edges()[ei as usize] {
                    let u = u as usize;
                    if u == v {
                        continue;
                    }
                    match roles[u] {
                        NONE => ok = false,
                        r => mask |= 1 << r,
                    }
                }
                if ok && mask.count_ones() == 3 {
                    gain[(!mask & 15).trailing_zeros() as usize] += 1;
                }
            }
            let mut base_e = e;
            let mut base_sizes = sizes;
            if old != NONE {
                base_e -= gain[old];
                base_sizes[old] -= 1;
            }
            let mut best = (cur, old);
            let mut options = vec![(value(base_e, base_sizes), NONE)];
            for r in 0..4 {
                let mut s = base_sizes;
                s[r] += 1;
                options.push((value(base_e + gain[r], s), r));
            }
            for (a, r) in options {
                if r != old && a > best.0 {
                    best = (a, r);
                }
            }
            let new = best.1;
            if new != old {
                moved = true;
                if new != NONE {
                    base_e += gain[new];
                    base_sizes[new] += 1;
                }
                roles[v] = new;
                e = base_e;
                sizes = base_sizes;
                cur = best.0;
            }
        }
        if !moved {
            break;
        }
    }
    (cur, roles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xyz_trivial() {
        let k = Hypergraph3::complete(6).unwrap();
        assert_eq!(xyz_value(&k, &rat(1, 1), &[0, 1], &[2, 3], &[4, 5]).unwrap(), rat(0, 1));
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(xyz_value(&h, &rat(0, 1), &[0], &[1], &[2]).unwrap(), rat(1, 1));
        let r = xyz_deviation(&h, Some(rat(0, 1)), &SampleConfig::new(50, 1)).unwrap();
        assert_eq!(r.max_deviation, rat(1, 1));
    }

    #[test]
    fn permanent_counts() {
        let t = permanent_table();
        assert_eq!(t[0xffff], 24);
        assert_eq!(t[0x8421], 1);
        assert_eq!(t[0x0421], 0);
    }

    #[test]
    fn quad_trivial() {
        let k = Hypergraph4::complete(8).unwrap();
        let v = quad_value(&k, &rat(1, 1), [&[0, 1], &[2, 3], &[4, 5], &[6, 7]]).unwrap();
        assert_eq!(v, rat(0, 1));
        let h = Hypergraph4::from_edges(4, [[0, 1, 2, 3]]).unwrap();
        assert_eq!(quad_value(&h, &rat(0, 1), [&[0], &[1], &[2], &[3]]).unwrap(), rat(1, 1));
        // Every ordering of the edge counts when all sets are V.
        let all = [0, 1, 2, 3];
        assert_eq!(quad_value(&h, &rat(0, 1), [&all, &all, &all, &all]).unwrap(), rat(24, 1));
    }

    #[test]
    fn improvement_never_hurts() {
        let h = crate::constructions::gen_random_3hg(14, 0.5, 2).unwrap();
        let d = Some(rat(1, 2));
        let mut cfg = SampleConfig::new(40, 8);
        cfg.improve = false;
        let plain = xyz_deviation(&h, d, &cfg).unwrap();
        cfg.improve = true;
        let better = xyz_deviation(&h, d, &cfg).unwrap();
        assert!(better.max_deviation >= plain.max_deviation);
    }
}
