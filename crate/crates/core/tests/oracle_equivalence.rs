//! Fast paths against the brute-force reference implementations.

use qturan::certifiers::{
    bipartite_regularity_deviation, pair_deviation, quad_value, relative_density,
    triangle_count_tripartite, weak_deviation, xyz_value, Mode, Triad,
};
use qturan::constructions::{gen_colouring_kk_free, gen_random_3hg, gen_tournament_3hg};
use qturan::detectors::{check_vanishing_condition, count_k4_minus, find_f4, find_k4_minus};
use qturan::multipartite::{mean_square_profile, MultipartiteGraph};
use qturan::rational::rat;
use qturan::{oracle, Hypergraph3, Hypergraph4, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_h3(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph3 {
    let p: f64 = rng.gen_range(0.05..0.95);
    gen_random_3hg(n, p, rng.gen()).unwrap()
}

fn random_h4(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Hypergraph4 {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if rng.gen_bool(p) {
                        edges.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    Hypergraph4::from_edges(n, edges).unwrap()
}

fn random_density(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=8);
    rat(rng.gen_range(0..=q), q)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

#[test]
fn weak_exact_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.gen_range(3..=12);
        let h = random_h3(&mut rng, n);
        let d = random_density(&mut rng);
        let r = weak_deviation(&h, Some(d), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, oracle::weak_deviation(&h, &d).unwrap(), "n={n} d={d}");
        // The witness attains the value.
        let u = &r.witness.sets[0];
        let mask = u.iter().fold(0u64, |m, &v| m | 1 << v);
        let s = u.len() as i128;
        let dev = rat(oracle::e_u(&h, mask) as i128, 1) - d * rat(s * (s - 1) * (s - 2) / 6, 1);
        assert_eq!(if dev < rat(0, 1) { -dev } else { dev }, r.max_deviation);
    }
    let h = gen_tournament_3hg(12, 7).unwrap();
    let d = rat(1, 4);
    let r = weak_deviation(&h, Some(d), Mode::exact()).unwrap();
    assert_eq!(r.max_deviation, oracle::weak_deviation(&h, &d).unwrap());
}

#[test]
fn search_never_exceeds_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let n = rng.gen_range(6..=14);
        let h = random_h3(&mut rng, n);
        let d = random_density(&mut rng);
        let seed = rng.gen();
        let ex = weak_deviation(&h, Some(d), Mode::exact()).unwrap();
        let se = weak_deviation(&h, Some(d), Mode::search(seed)).unwrap();
        assert!(se.max_deviation <= ex.max_deviation);
        if n <= 10 {
            let ex = pair_deviation(&h, Some(d), Mode::exact()).unwrap();
            let se = pair_deviation(&h, Some(d), Mode::search(seed)).unwrap();
            assert!(se.max_deviation <= ex.max_deviation);
        }
    }
}

#[test]
fn pair_exact_matches_full_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..12 {
        let n = rng.gen_range(3..=5);
        let h = random_h3(&mut rng, n);
        let d = random_density(&mut rng);
        let r = pair_deviation(&h, Some(d), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, oracle::pair_deviation_full(&h, &d).unwrap());
    }
}

#[test]
fn pair_exact_matches_split_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..6 {
        let n = rng.gen_range(6..=8);
        let h = random_h3(&mut rng, n);
        let d = random_density(&mut rng);
        let r = pair_deviation(&h, Some(d), Mode::exact()).unwrap();
        assert_eq!(r.max_deviation, oracle::pair_deviation_split(&h, &d).unwrap());
    }
}

#[test]
fn pair_exact_dominates_samples() {
    let h = gen_colouring_kk_free(16, 4, 3).unwrap();
    let d = rat(1, 2);
    let r = pair_deviation(&h, Some(d), Mode::exact()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs: Vec<(usize, usize)> = (0..16).flat_map(|x| (x + 1..16).map(move |y| (x, y))).collect();
    for _ in 0..200 {
        let u = random_subset(&mut rng, 16);
        let xs: Vec<_> = pairs.iter().filter(|_| rng.gen_bool(0.5)).collect();
        let mut e = 0i128;
        for &&(x, y) in &xs {
            e += u.iter().filter(|&&w| h.has_edge(w, x, y)).count() as i128;
        }
        let dev = rat(e, 1) - d * rat((u.len() * xs.len()) as i128, 1);
        assert!(if dev < rat(0, 1) { -dev } else { dev } <= r.max_deviation);
    }
}

#[test]
fn xyz_value_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..40 {
        let n = rng.gen_range(3..=15);
        let h = random_h3(&mut rng, n);
        let d = random_density(&mut rng);
        let (x, y, z) = (random_subset(&mut rng, n), random_subset(&mut rng, n), random_subset(&mut rng, n));
        let e = oracle::e_xyz(&h, &x, &y, &z);
        assert_eq!(h.count_e_xyz(&x, &y, &z).unwrap(), e);
        let dev = rat(e as i128, 1) - d * rat((x.len() * y.len() * z.len()) as i128, 1);
        assert_eq!(xyz_value(&h, &d, &x, &y, &z).unwrap(), if dev < rat(0, 1) { -dev } else { dev });
    }
}

#[test]
fn quad_value_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(4..=10);
        let h = random_h4(&mut rng, n, 0.4);
        let d = random_density(&mut rng);
        let sets: Vec<Vec<usize>> = (0..4).map(|_| random_subset(&mut rng, n)).collect();
        let mut e = 0i128;
        for &a in &sets[0] {
            for &b in &sets[1] {
                for &c in &sets[2] {
                    for &w in &sets[3] {
                        let t = [a, b, c, w];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                        if distinct && h.has_edge(t) {
                            e += 1;
                        }
                    }
                }
            }
        }
        let vol: usize = sets.iter().map(Vec::len).product();
        let dev = rat(e, 1) - d * rat(vol as i128, 1);
        let got = quad_value(&h, &d, [&sets[0], &sets[1], &sets[2], &sets[3]]).unwrap();
        assert_eq!(got, if dev < rat(0, 1) { -dev } else { dev });
    }
}

#[test]
fn k4_minus_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let n = rng.gen_range(4..=25);
        let p = rng.gen_range(0.0..0.2);
        let h = gen_random_3hg(n, p, rng.gen()).unwrap();
        assert_eq!(count_k4_minus(&h), oracle::count_k4_minus(&h));
        for ordered in [false, true] {
            let fast = find_k4_minus(&h, ordered).map(|w| (w.vertices, w.apex.unwrap()));
            let slow = oracle::find_k4_minus(&h, ordered).map(|(q, a)| (q.to_vec(), a));
            assert_eq!(fast, slow, "n={n} ordered={ordered}");
        }
    }
}

#[test]
fn f4_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let n = rng.gen_range(4..=11);
        let p = rng.gen_range(0.0..0.15);
        let h = random_h4(&mut rng, n, p);
        let fast = find_f4(&h).map(|w| w.vertices);
        assert_eq!(fast, oracle::find_f4(&h).map(|t| t.to_vec()));
    }
}

#[test]
fn bipartite_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..6 {
        let (l, r) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
        let p = MultipartiteGraph::random(&[l, r], rng.gen_range(0.1..0.9), rng.gen());
        let g = p.bipartite(0, 1);
        let d = random_density(&mut rng);
        let rep = bipartite_regularity_deviation(&g, Some(d), Mode::exact()).unwrap();
        assert_eq!(rep.max_deviation, oracle::bipartite_deviation(&g, &d).unwrap(), "{l}x{r}");
    }
}

#[test]
fn vanishing_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(3..=5);
        let h = random_h3(&mut rng, n);
        let fast = check_vanishing_condition(&h).unwrap();
        assert_eq!(fast.is_some(), oracle::vanishing_condition(&h).unwrap(), "{:?}", h.edges());
    }
}

#[test]
fn triangles_and_mean_squares_match_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let sizes = [rng.gen_range(1..=9), rng.gen_range(1..=9), rng.gen_range(1..=9)];
        let p = MultipartiteGraph::random(&sizes, rng.gen_range(0.1..0.9), rng.gen());
        assert_eq!(triangle_count_tripartite(&p).unwrap(), oracle::triangle_count(&p));
        let prof = mean_square_profile(&p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(prof.sums[i][j], oracle::mean_square_sum(&p, i, j));
                }
            }
        }
    }
}

#[test]
fn relative_density_matches_naive() {
    let h = gen_tournament_3hg(18, 4).unwrap();
    let p = MultipartiteGraph::random(&[6, 6, 6], 0.6, 2);
    let t = Triad::new(p.clone(), (0..18).collect()).unwrap();
    let r = relative_density(&h, &t).unwrap();
    let (mut tri, mut hit) = (0u64, 0u64);
    for a in 0..6 {
        for b in 6..12 {
            for c in 12..18 {
                if p.has_edge(a, b) && p.has_edge(a, c) && p.has_edge(b, c) {
                    tri += 1;
                    hit += h.has_edge(a, b, c) as u64;
                }
            }
        }
    }
    assert_eq!((r.triangles, r.hyperedges), (tri, hit));
}
