//! The acceptance checks, at a quick and a full level.
//!
//! Full runs every check at its stated size. Quick shrinks sizes and seed
//! counts so the whole suite finishes in well under two minutes.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use qturan::certifiers::{tcl_check, weak_deviation, Mode};
use qturan::constructions::{
    gen_colouring_kk_free, gen_leader_tan, gen_oriented_4hg, gen_party_of_six, gen_random_3hg,
    gen_rainbow_1_27, gen_sk_free, gen_sk_free_with_colouring, gen_tournament_3hg, sk_pattern_count,
    RuleTable,
};
use qturan::detectors::{
    check_vanishing_condition, count_k4_minus, embed_small, find_clique3, find_f4, find_k4_minus, find_sk,
    link_colouring_witness, ApexPosition, PairColour, VanishingWitness,
};
use qturan::hash::{derive_seed, mix64};
use qturan::multipartite::{
    explore_extremal, find_triangle_mp, half_split, mean_square_profile, project_auxiliary, AuxBlock,
    ExploreConfig, MultipartiteGraph,
};
use qturan::rational::rat;
use qturan::{oracle, Hypergraph3, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::experiment::{mean_density, run_experiment, Cell, ExperimentSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// One entry per failing instance, naming its seed.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const CRITERIA: [&str; 11] = [
    "construction densities",
    "forbidden-structure freeness",
    "oracle equivalence",
    "sieve bound",
    "pattern-rule audit",
    "link colouring classes",
    "multipartite tightness",
    "cauchy-schwarz block step",
    "vanishing condition",
    "triangle counting lemma",
    "ordered K4- detection probe",
];

type Check = fn(Level) -> (String, Vec<String>);

const CHECKS: [Check; 11] = [
    densities,
    freeness,
    oracle_equivalence,
    sieve_bound,
    rule_audit,
    link_colouring,
    multipartite_tightness,
    cauchy_schwarz,
    vanishing,
    triangle_counting,
    detection_probe,
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, level: Level) -> CriterionResult {
    let start = Instant::now();
    let (detail, failures) = CHECKS[id - 1](level);
    CriterionResult {
        id,
        name: CRITERIA[id - 1],
        passed: failures.is_empty(),
        detail,
        failures,
        elapsed: start.elapsed(),
    }
}

pub fn verify_suite(level: Level) -> Vec<CriterionResult> {
    (1..=CHECKS.len()).map(|id| run_criterion(id, level)).collect()
}

fn densities(level: Level) -> (String, Vec<String>) {
    // (construction, k, n, target, tolerance)
    let rows: [(&str, Option<usize>, usize, f64, f64); 8] = [
        ("tournament3", None, 400, 0.25, 0.005),
        ("colouring-kk", Some(4), 300, 0.5, 0.01),
        ("party6", None, 300, 0.75, 0.01),
        ("rainbow27", None, 300, 1.0 / 27.0, 0.005),
        ("sk-free", Some(4), 300, 1.0 / 3.0, 0.01),
        ("sk-free", Some(5), 300, 7.0 / 16.0, 0.01),
        ("oriented4", None, 100, 0.125, 0.01),
        ("leader-tan", None, 100, 0.25, 0.02),
    ];
    let seeds = level.pick(3, 10);
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (name, k, n, target, tol) in rows {
        let spec = ExperimentSpec {
            cells: (0..seeds)
                .map(|seed| Cell {
                    construction: name.to_string(),
                    k,
                    n,
                    seed,
                })
                .collect(),
            timing: true,
            ..ExperimentSpec::default()
        };
        let label = match k {
            Some(k) => format!("{name}(k={k})"),
            None => name.to_string(),
        };
        let report = match run_experiment(&spec) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        for row in &report.rows {
            if let Some(e) = &row.error {
                failures.push(format!("{label} seed {}: {e}", row.seed));
            }
            if row.wall_ms.unwrap_or(0) >= 10_000 {
                failures.push(format!("{label} seed {}: took {} ms", row.seed, row.wall_ms.unwrap_or(0)));
            }
        }
        let mean = mean_density(&report, name, n);
        match mean {
            Some(m) if (m - target).abs() <= tol => parts.push(format!("{label} {m:.4}")),
            Some(m) => failures.push(format!("{label} n={n}: mean {m:.5} outside {target:.5} +- {tol}")),
            None => failures.push(format!("{label}: no successful cells")),
        }
    }
    (parts.join(", "), failures)
}

fn freeness(level: Level) -> (String, Vec<String>) {
    let seeds = level.pick(2, 5);
    let mut failures = Vec::new();
    let mut report = |what: &str, seed: u64, found: Option<Vec<usize>>| {
        if let Some(w) = found {
            failures.push(format!("{what} seed {seed}: witness {w:?}"));
        }
    };
    let (nt, nc, np, ns, n4) = level.pick((60, 40, 30, 50, 30), (120, 80, 40, 100, 60));
    let mut timing = Vec::new();
    for seed in 0..seeds {
        let t = Instant::now();
        let h = gen_tournament_3hg(nt, seed).unwrap();
        report("K4- in tournament3", seed, find_k4_minus(&h, false).map(|w| w.vertices));
        let secs = t.elapsed().as_secs_f64();
        timing.push(secs);
        if secs >= 60.0 {
            report("tournament3 K4- scan time", seed, Some(vec![secs as usize]));
        }

        let h = gen_colouring_kk_free(nc, 4, seed).unwrap();
        report("K4(3) in colouring-kk", seed, find_clique3(&h, 4).unwrap().map(|w| w.vertices));

        let h = gen_party_of_six(np, seed).unwrap();
        report("K6(3) in party6", seed, find_clique3(&h, 6).unwrap().map(|w| w.vertices));

        let h = gen_sk_free(ns, 4, seed).unwrap();
        report("S4 in sk-free", seed, find_sk(&h, 4).unwrap().map(|w| w.vertices));

        let h = gen_oriented_4hg(n4, seed).unwrap();
        report("F4 in oriented4", seed, find_f4(&h).map(|w| w.vertices));
        let h = gen_leader_tan(n4, seed).unwrap();
        report("F4 in leader-tan", seed, find_f4(&h).map(|w| w.vertices));
    }
    let slowest = timing.iter().cloned().fold(0.0, f64::max);
    (
        format!("{seeds} seeds each, n = {nt}/{nc}/{np}/{ns}/{n4}, slowest K4- scan {slowest:.2}s"),
        failures,
    )
}

/// A seeded random 3-graph whose edge probability also comes from the seed.
fn instance(n: usize, seed: u64) -> Hypergraph3 {
    let p = 0.05 + 0.9 * (mix64(seed) >> 11) as f64 / (1u64 << 53) as f64;
    gen_random_3hg(n, p, seed).unwrap()
}

fn instance_density(seed: u64) -> Rational {
    let q = 1 + (mix64(seed ^ 0x5bd1) % 8) as i128;
    rat((mix64(seed ^ 0x7f4a) % (q as u64 + 1)) as i128, q)
}

fn oracle_equivalence(level: Level) -> (String, Vec<String>) {
    let mut failures = Vec::new();
    let weak_count = level.pick(30, 100);
    for i in 0..weak_count {
        let seed = derive_seed(31, i);
        let n = 3 + (i as usize % 10);
        let h = instance(n, seed);
        let d = instance_density(seed);
        let fast = weak_deviation(&h, Some(d), Mode::exact()).unwrap().max_deviation;
        let slow = oracle::weak_deviation(&h, &d).unwrap();
        if fast != slow {
            failures.push(format!("weak n={n} seed {seed}: {fast} vs {slow}"));
        }
    }
    let pair_count = level.pick(8, 24);
    for i in 0..pair_count {
        let seed = derive_seed(32, i);
        let n = 3 + (i as usize % 6);
        let h = instance(n, seed);
        let d = instance_density(seed);
        let fast = qturan::certifiers::pair_deviation(&h, Some(d), Mode::exact()).unwrap().max_deviation;
        let slow = if n <= 6 {
            oracle::pair_deviation_full(&h, &d).unwrap()
        } else {
            oracle::pair_deviation_split(&h, &d).unwrap()
        };
        if fast != slow {
            failures.push(format!("pair n={n} seed {seed}: {fast} vs {slow}"));
        }
    }
    let k4_count = level.pick(20, 60);
    for i in 0..k4_count {
        let seed = derive_seed(33, i);
        let n = 4 + (i as usize % 22);
        let p = 0.02 + 0.2 * (mix64(seed) % 1000) as f64 / 1000.0;
        let h = gen_random_3hg(n, p, seed).unwrap();
        let (fast, slow) = (count_k4_minus(&h), oracle::count_k4_minus(&h));
        if fast != slow {
            failures.push(format!("count_k4_minus n={n} seed {seed}: {fast} vs {slow}"));
        }
    }
    (
        format!("{weak_count} weak, {pair_count} pair, {k4_count} K4- instances"),
        failures,
    )
}

/// Disjoint `X, Y, Z`: each vertex joins one of them or none.
fn disjoint_sets(rng: &mut ChaCha8Rng, n: usize) -> [Vec<usize>; 3] {
    let mut sets: [Vec<usize>; 3] = Default::default();
    for v in 0..n {
        let r = rng.gen_range(0..4);
        if r < 3 {
            sets[r].push(v);
        }
    }
    sets
}

fn sieve_bound(level: Level) -> (String, Vec<String>) {
    let instances = level.pick(8, 20);
    let samples = level.pick(300, 1000);
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..instances {
        let seed = derive_seed(41, i);
        let n = 5 + (i as usize % 8);
        let h = instance(n, seed);
        let d = h.density().exact;
        let dev = weak_deviation(&h, Some(d), Mode::exact()).unwrap().max_deviation;
        let bound = dev * 7;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in 0..samples {
            let [x, y, z] = disjoint_sets(&mut rng, n);
            let e = h.count_e_xyz(&x, &y, &z).unwrap() as i128;
            let vol = (x.len() * y.len() * z.len()) as i128;
            let diff = rat(e, 1) - d * vol;
            let diff = if diff < rat(0, 1) { -diff } else { diff };
            if diff > bound {
                failures.push(format!("instance seed {seed} sample {s}: {diff} > 7 * {}", bound / 7));
            } else if bound > rat(0, 1) {
                worst = worst.max(qturan::rational::to_f64(&(diff / bound)));
            }
        }
    }
    (
        format!("{instances} instances x {samples} samples, worst |dev| / 7 eta n^3 = {worst:.3}"),
        failures,
    )
}

/// The nine allowed patterns for `k = 4`: `aba` with `b != a`, and the three
/// rotations of `012`.
fn k4_patterns() -> BTreeSet<[u8; 3]> {
    let mut s = BTreeSet::new();
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                s.insert([a, b, a]);
            }
        }
    }
    s.extend([[0, 1, 2], [1, 2, 0], [2, 0, 1]]);
    s
}

/// Checks a rule table for `S_k` against the expected pattern count, and
/// for `k = 4` against the explicit list of nine patterns.
pub fn audit_rule_table(k: usize, table: &RuleTable) -> Result<(), String> {
    let expected = sk_pattern_count(k);
    if table.count() != expected {
        return Err(format!("k={k}: {} allowed patterns, expected {expected}", table.count()));
    }
    if k == 4 {
        let got: BTreeSet<[u8; 3]> = table.patterns().into_iter().collect();
        if got != k4_patterns() {
            return Err(format!("k=4: allowed patterns {got:?} are not the nine expected"));
        }
    }
    Ok(())
}

fn rule_audit(_: Level) -> (String, Vec<String>) {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for k in 4..=8 {
        match RuleTable::sk_free(k) {
            Ok(t) => {
                counts.push(format!("k={k}: {}/{}", t.count(), (k - 1).pow(3)));
                if let Err(e) = audit_rule_table(k, &t) {
                    failures.push(e);
                }
            }
            Err(e) => failures.push(format!("k={k}: {e}")),
        }
    }
    (counts.join(", "), failures)
}

fn link_colouring(level: Level) -> (String, Vec<String>) {
    let seeds = level.pick(2, 5);
    let mut failures = Vec::new();
    let mut apexes = 0;
    for k in [4, 5] {
        for seed in 0..seeds {
            let (h, psi) = gen_sk_free_with_colouring(50, k, seed).unwrap();
            for a in 0..h.n() {
                apexes += 1;
                match link_colouring_witness(&h, Some(&psi), a) {
                    Ok(lc) => {
                        let covered: usize = lc.classes.iter().map(Vec::len).sum();
                        if !lc.all_independent() || covered != h.n() - 1 {
                            failures.push(format!("k={k} seed {seed} apex {a}: {:?}", lc.independent));
                        }
                    }
                    Err(e) => failures.push(format!("k={k} seed {seed} apex {a}: {e}")),
                }
            }
        }
    }
    (format!("{apexes} apexes checked"), failures)
}

fn multipartite_tightness(level: Level) -> (String, Vec<String>) {
    let mut failures = Vec::new();
    let g = half_split(5, 12).unwrap();
    if let Some(t) = find_triangle_mp(&g) {
        failures.push(format!("half_split(5, 12) has triangle {t:?}"));
    }
    let prof = mean_square_profile(&g).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            if i != j && prof.ratio(i, j) != rat(1, 4) {
                failures.push(format!("ratio[{i}][{j}] = {}", prof.ratio(i, j)));
            }
        }
    }
    let runs: Vec<(usize, usize)> = level.pick(vec![(3, 6), (4, 6)], vec![(3, 6), (4, 8), (5, 6), (5, 12)]);
    let seeds = level.pick(2, 4);
    let mut best = rat(1, 4);
    for &(m, s) in &runs {
        for seed in 0..seeds {
            let mut cfg = ExploreConfig::new(m, s, seed);
            cfg.restarts = level.pick(2, 4);
            match explore_extremal(&cfg) {
                Ok(r) => {
                    if find_triangle_mp(&r.graph).is_some() {
                        failures.push(format!("explorer m={m} s={s} seed {seed}: reported a triangle"));
                    }
                    if r.min_ratio < rat(1, 4) {
                        failures.push(format!("explorer m={m} s={s} seed {seed}: min ratio {}", r.min_ratio));
                    }
                    best = best.max(r.min_ratio);
                }
                Err(e) => failures.push(format!("explorer m={m} s={s} seed {seed}: {e}")),
            }
        }
    }
    (
        format!("half_split(5,12) ratios all 1/4; {} explorer runs, best min ratio {best}", runs.len() * seeds as usize),
        failures,
    )
}

/// Triples inside random subsets of the three classes, plus sparse noise.
fn planted_block(rng: &mut ChaCha8Rng, sizes: [usize; 3]) -> AuxBlock {
    let keep: Vec<Vec<bool>> = sizes
        .iter()
        .map(|&s| {
            let q = rng.gen_range(0.5..1.0);
            (0..s).map(|_| rng.gen_bool(q)).collect()
        })
        .collect();
    let noise = rng.gen_range(0.0..0.2);
    AuxBlock::from_fn(sizes, |x, y, z| (keep[0][x] && keep[1][y] && keep[2][z]) || rng.gen_bool(noise))
}

/// `{x, y, z}` is a triple iff the vertex weights sum past a threshold.
fn threshold_block(rng: &mut ChaCha8Rng, sizes: [usize; 3]) -> AuxBlock {
    let w: Vec<Vec<f64>> = sizes.iter().map(|&s| (0..s).map(|_| rng.gen::<f64>()).collect()).collect();
    let t = rng.gen_range(0.8..1.6);
    AuxBlock::from_fn(sizes, |x, y, z| w[0][x] + w[1][y] + w[2][z] >= t)
}

/// Each middle vertex `y` sees a random slice of one outer class and all of
/// the other, so typically only one of the two estimates holds.
fn skewed_block(rng: &mut ChaCha8Rng, sizes: [usize; 3]) -> AuxBlock {
    let left = rng.gen_bool(0.5);
    let outer = if left { sizes[0] } else { sizes[2] };
    let slices: Vec<Vec<bool>> = (0..sizes[1])
        .map(|_| {
            let q = rng.gen_range(0.3..0.5);
            (0..outer).map(|_| rng.gen_bool(q)).collect()
        })
        .collect();
    AuxBlock::from_fn(sizes, |x, y, z| slices[y][if left { x } else { z }])
}

fn cauchy_schwarz(level: Level) -> (String, Vec<String>) {
    let blocks = level.pick(60, 200);
    let eps = rat(1, 20);
    let mut failures = Vec::new();
    let (mut red, mut green, mut both) = (0, 0, 0);
    let mut i = 0u64;
    let mut checked = 0;
    while checked < blocks {
        let seed = derive_seed(81, i);
        i += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes = [rng.gen_range(2..=12), rng.gen_range(2..=12), rng.gen_range(2..=12)];
        let block = match i % 4 {
            0 => AuxBlock::random(sizes, rng.gen_range(0.3..1.0), seed),
            1 => planted_block(&mut rng, sizes),
            2 => threshold_block(&mut rng, sizes),
            _ => skewed_block(&mut rng, sizes),
        };
        if block.density() < rat(3, 10) {
            continue;
        }
        checked += 1;
        let proj = project_auxiliary(&block, &eps).unwrap();
        if !proj.hypothesis_holds || !(proj.star_holds || proj.star_star_holds) {
            failures.push(format!(
                "block seed {seed} sizes {sizes:?}: ratios {} / {}",
                proj.star_ratio, proj.star_star_ratio
            ));
        }
        match (proj.star_holds, proj.star_star_holds) {
            (true, true) => both += 1,
            (true, false) => green += 1,
            (false, true) => red += 1,
            _ => {}
        }
    }
    (
        format!("{blocks} blocks with density >= 0.30: {green} only (*), {red} only (**), {both} both"),
        failures,
    )
}

fn witness_valid(f: &Hypergraph3, w: &VanishingWitness) -> bool {
    let mut pos = vec![0; f.n()];
    for (i, &v) in w.ordering.iter().enumerate() {
        pos[v] = i;
    }
    let colour = |u: usize, v: usize| {
        w.colours
            .iter()
            .find(|c| (c.0, c.1) == (u.min(v), u.max(v)))
            .map(|c| c.2)
    };
    f.edge_iter().all(|e| {
        let mut t = e;
        t.sort_by_key(|&v| pos[v]);
        colour(t[0], t[1]) == Some(PairColour::Red)
            && colour(t[0], t[2]) == Some(PairColour::Blue)
            && colour(t[1], t[2]) == Some(PairColour::Green)
    })
}

fn triples_of(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn linear(edges: &[[usize; 3]]) -> bool {
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|g| e.iter().filter(|v| g.contains(v)).count() <= 1)
    })
}

/// Edge set relabelled onto `0..support` with the least sorted edge list
/// over all relabellings.
fn canonical(edges: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let support: BTreeSet<usize> = edges.iter().flatten().copied().collect();
    let support: Vec<usize> = support.into_iter().collect();
    let mut perm: Vec<usize> = (0..support.len()).collect();
    let mut best: Option<Vec<[usize; 3]>> = None;
    loop {
        let mut mapped: Vec<[usize; 3]> = edges
            .iter()
            .map(|e| {
                let mut t = e.map(|v| perm[support.binary_search(&v).unwrap()]);
                t.sort_unstable();
                t
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn vanishing(level: Level) -> (String, Vec<String>) {
    let mut failures = Vec::new();
    let single = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
    match check_vanishing_condition(&single).unwrap() {
        Some(w) if witness_valid(&single, &w) => {}
        other => failures.push(format!("single edge: {other:?}")),
    }

    let triples = triples_of(6);
    let mut linear_checked = 0;
    let mut accepted_three: BTreeSet<Vec<[usize; 3]>> = BTreeSet::new();
    for a in 0..triples.len() {
        for b in a + 1..triples.len() {
            for c in b + 1..triples.len() {
                let edges = [triples[a], triples[b], triples[c]];
                let f = Hypergraph3::from_edges(6, edges).unwrap();
                let w = check_vanishing_condition(&f).unwrap();
                if let Some(w) = &w {
                    if !witness_valid(&f, w) {
                        failures.push(format!("invalid witness for {edges:?}"));
                    }
                    accepted_three.insert(canonical(&edges));
                }
                if linear(&edges) {
                    linear_checked += 1;
                    if w.is_none() {
                        failures.push(format!("linear {edges:?} rejected"));
                    }
                }
            }
        }
    }
    // Linear hypergraphs with one or two edges.
    for a in 0..triples.len() {
        for b in a..triples.len() {
            let edges: Vec<[usize; 3]> = if a == b { vec![triples[a]] } else { vec![triples[a], triples[b]] };
            if !linear(&edges) {
                continue;
            }
            linear_checked += 1;
            let f = Hypergraph3::from_edges(6, edges.iter().copied()).unwrap();
            if check_vanishing_condition(&f).unwrap().is_none() {
                failures.push(format!("linear {edges:?} rejected"));
            }
        }
    }

    let k4m = Hypergraph3::from_edges(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
    if check_vanishing_condition(&k4m).unwrap().is_some() {
        failures.push("K4- accepted".into());
    }
    if oracle::vanishing_condition(&k4m).unwrap() {
        failures.push("K4- accepted by the exhaustive 24 x 3^6 search".into());
    }

    let seeds = level.pick(1, 3);
    let n = level.pick(150, 300);
    for seed in 0..seeds {
        let host = gen_rainbow_1_27(n, seed).unwrap();
        for edges in &accepted_three {
            let f_n = edges.iter().flatten().max().map_or(0, |&v| v + 1);
            let f = Hypergraph3::from_edges(f_n, edges.iter().copied()).unwrap();
            match embed_small(&f, &host, false) {
                Ok(Some(_)) => {}
                Ok(None) => failures.push(format!("{edges:?} does not embed in rainbow27 n={n} seed {seed}")),
                Err(e) => failures.push(format!("{edges:?}: {e}")),
            }
        }
    }
    (
        format!(
            "{linear_checked} linear hypergraphs accepted, K4- rejected, {} accepted 3-edge types embed into rainbow27(n={n}) for {seeds} seeds",
            accepted_three.len()
        ),
        failures,
    )
}

fn triangle_counting(level: Level) -> (String, Vec<String>) {
    let mut failures = Vec::new();
    let instances = level.pick(6, 20);
    let part = level.pick(24, 40);
    let exact_part = level.pick(12, 20);
    let mut slack = f64::INFINITY;
    let mut run = |p: &MultipartiteGraph, d2: Rational, mode: Mode, label: String| match tcl_check(p, d2, mode) {
        Ok(r) => {
            if !r.holds {
                failures.push(format!("{label}: {} triangles > bound {}", r.triangles, r.bound_value));
            }
            slack = slack.min(r.bound_value - r.triangles as f64);
        }
        Err(e) => failures.push(format!("{label}: {e}")),
    };
    for i in 0..instances {
        let seed = derive_seed(101, i);
        let (p, d2) = if i % 2 == 0 { (0.5, rat(1, 2)) } else { (0.25, rat(1, 4)) };
        let g = MultipartiteGraph::random(&[part; 3], p, seed);
        run(&g, d2, Mode::search(seed), format!("parts {part} p={p} seed {seed} (search)"));
        let g = MultipartiteGraph::random(&[exact_part; 3], p, seed);
        run(&g, d2, Mode::exact(), format!("parts {exact_part} p={p} seed {seed} (exact)"));
    }
    (
        format!("{instances} instances at parts {part} (searched delta) and {exact_part} (exact delta), least slack {slack:.1}"),
        failures,
    )
}

fn detection_probe(level: Level) -> (String, Vec<String>) {
    let trials = level.pick(40, 100);
    let need = level.pick(38, 95);
    let mut hits = 0;
    let mut misses = Vec::new();
    for seed in 0..trials {
        let h = gen_random_3hg(40, 0.3, seed).unwrap();
        match find_k4_minus(&h, true) {
            Some(w) if w.apex_position != Some(ApexPosition::Interior) => hits += 1,
            _ => misses.push(seed),
        }
    }
    let failures = if hits >= need {
        Vec::new()
    } else {
        vec![format!("only {hits}/{trials} hits; missing seeds {misses:?}")]
    };
    (format!("{hits}/{trials} seeds contain an ordered K4-"), failures)
}
