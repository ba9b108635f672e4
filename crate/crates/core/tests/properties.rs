use proptest::prelude::*;
use qturan::certifiers::{pair_deviation, weak_deviation, Mode};
use qturan::constructions::{gen_random_3hg, gen_sk_free, gen_tournament_3hg, ConstructionKind};
use qturan::detectors::{check_vanishing_condition, embed_small, find_k4_minus, find_sk, ApexPosition};
use qturan::multipartite::{
    explore_extremal, find_triangle_mp, half_split, project_auxiliary, AuxBlock, ExploreConfig,
};
use qturan::rational::rat;
use qturan::{read_hypergraph, Hypergraph3};

fn h3(max_n: usize) -> impl Strategy<Value = Hypergraph3> {
    (4..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, s)| gen_random_3hg(n, p, s).unwrap())
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn e_u_is_a_sixth_of_ordered_count(h in h3(14), bits in any::<u64>()) {
        let u: Vec<usize> = (0..h.n()).filter(|&v| bits >> v & 1 == 1).collect();
        prop_assert_eq!(h.count_e_u(&u).unwrap() * 6, h.count_e_xyz(&u, &u, &u).unwrap());
    }

    #[test]
    fn link_sizes(h in h3(16)) {
        let total: usize = (0..h.n()).map(|a| h.link_graph(a).unwrap().edge_count()).sum();
        prop_assert_eq!(total, 3 * h.edge_count());
        let all: Vec<usize> = (0..h.n()).collect();
        for a in 0..h.n() {
            let rest: Vec<usize> = all.iter().copied().filter(|&v| v != a).collect();
            let lost = h.count_e_u(&all).unwrap() - h.count_e_u(&rest).unwrap();
            prop_assert_eq!(h.link_graph(a).unwrap().edge_count() as u64, lost);
        }
    }

    #[test]
    fn text_round_trip(h in h3(20)) {
        let back = read_hypergraph(&qturan::io::write_hypergraph3(&h)).unwrap().into_three().unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn generators_restrict_to_prefixes(n in 12usize..30, m in 5usize..12, seed in any::<u64>()) {
        let prefix: Vec<usize> = (0..m).collect();
        for kind in ConstructionKind::ALL {
            let k = kind.needs_k().then_some(4);
            let (big, small) = match (kind.generate(n, k, seed), kind.generate(m, k, seed)) {
                (Ok(b), Ok(s)) => (b, s),
                _ => continue,
            };
            match (big, small) {
                (qturan::AnyHypergraph::Three(b), qturan::AnyHypergraph::Three(s)) => {
                    prop_assert_eq!(b.induced(&prefix).unwrap(), s, "{}", kind.name());
                }
                (qturan::AnyHypergraph::Four(b), qturan::AnyHypergraph::Four(s)) => {
                    let inside = b.edge_iter().filter(|e| e.iter().all(|&v| v < m)).count();
                    prop_assert_eq!(inside, s.edge_count(), "{}", kind.name());
                    prop_assert!(s.edge_iter().all(|e| b.has_edge(e)));
                }
                _ => prop_assert!(false, "arity changed"),
            }
        }
    }

    #[test]
    fn s3_is_k4_minus(h in h3(14)) {
        let s3 = find_sk(&h, 3).unwrap().is_some();
        prop_assert_eq!(s3, find_k4_minus(&h, false).is_some());
    }

    #[test]
    fn ordered_witness_apex_is_extreme(h in h3(18)) {
        if let Some(w) = find_k4_minus(&h, true) {
            prop_assert_ne!(w.apex_position, Some(ApexPosition::Interior));
            let a = w.apex.unwrap();
            prop_assert!(a == w.vertices[0] || a == w.vertices[3]);
        }
    }

    #[test]
    fn one_edge_moves_weak_deviation_by_at_most_one(h in h3(10), q in 1i128..6, pick in any::<u64>()) {
        let d = rat(pick as i128 % (q + 1), q);
        let n = h.n();
        let missing: Vec<[usize; 3]> = (0..n)
            .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
            .filter(|&[a, b, c]| !h.has_edge(a, b, c))
            .collect();
        prop_assume!(!missing.is_empty());
        let extra = missing[pick as usize % missing.len()];
        let bigger = Hypergraph3::from_edges(n, h.edge_iter().chain([extra])).unwrap();
        let before = weak_deviation(&h, Some(d), Mode::exact()).unwrap().max_deviation;
        let after = weak_deviation(&bigger, Some(d), Mode::exact()).unwrap().max_deviation;
        let diff = after - before;
        prop_assert!(diff <= rat(1, 1) && diff >= rat(-1, 1));
        if n <= 8 {
            let before = pair_deviation(&h, Some(d), Mode::exact()).unwrap().max_deviation;
            let after = pair_deviation(&bigger, Some(d), Mode::exact()).unwrap().max_deviation;
            // One triple contributes to three (vertex, pair) incidences.
            let diff = after - before;
            prop_assert!(diff <= rat(3, 1) && diff >= rat(-3, 1));
        }
    }

    #[test]
    fn vanishing_is_label_invariant(n in 3usize..=6, p in 0.0..0.6f64, seed in any::<u64>(), perms in proptest::collection::vec(Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), 6)) {
        let f = gen_random_3hg(n, p, seed).unwrap();
        let base = check_vanishing_condition(&f).unwrap().is_some();
        for perm in perms {
            let relabel: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
            let g = Hypergraph3::from_edges(n, f.edge_iter().map(|e| e.map(|v| relabel[v]))).unwrap();
            prop_assert_eq!(check_vanishing_condition(&g).unwrap().is_some(), base);
        }
    }

    #[test]
    fn induced_subpatterns_embed(h in h3(16), pick in subset(16)) {
        let u: Vec<usize> = pick.into_iter().filter(|&v| v < h.n()).take(6).collect();
        let f = h.induced(&u).unwrap();
        let phi = embed_small(&f, &h, false).unwrap();
        prop_assert!(phi.is_some());
        let phi = embed_small(&f, &h, true).unwrap();
        prop_assert!(phi.is_some());
    }

    #[test]
    fn aux_projection_is_consistent(sizes in proptest::array::uniform3(1usize..7), p in 0.0..1.0f64, seed in any::<u64>()) {
        let block = AuxBlock::random(sizes, p, seed);
        let proj = project_auxiliary(&block, &rat(1, 20)).unwrap();
        prop_assert!(proj.consistent());
    }
}

#[test]
fn half_split_is_triangle_free() {
    for m in 2..=6 {
        for s in (2..=20).step_by(2) {
            assert_eq!(find_triangle_mp(&half_split(m, s).unwrap()), None, "m={m} s={s}");
        }
    }
}

#[test]
fn explorer_output_is_triangle_free() {
    for seed in 0..4 {
        let mut cfg = ExploreConfig::new(4, 6, seed);
        cfg.restarts = 3;
        let r = explore_extremal(&cfg).unwrap();
        assert!(r.triangle_free);
        assert_eq!(find_triangle_mp(&r.graph), None);
        assert!(r.min_ratio >= rat(1, 4));
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let h = gen_tournament_3hg(18, 3).unwrap();
    let sk = gen_sk_free(60, 5, 1).unwrap();
    let run = || {
        let w = weak_deviation(&h, Some(rat(1, 4)), Mode::exact()).unwrap();
        let s = weak_deviation(&h, Some(rat(1, 4)), Mode::search(9)).unwrap();
        let p = pair_deviation(&h, None, Mode::search(9)).unwrap();
        let k = find_k4_minus(&sk, false).map(|w| w.vertices);
        let e = explore_extremal(&ExploreConfig::new(3, 6, 5)).unwrap();
        (
            w.max_deviation,
            w.witness.sets,
            s.max_deviation,
            s.witness.sets,
            p.max_deviation,
            k,
            e.min_ratio,
            e.graph.edges(),
        )
    };
    let pools: Vec<_> = [1, 2, 5]
        .into_iter()
        .map(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap())
        .collect();
    let first = pools[0].install(run);
    for pool in &pools[1..] {
        assert_eq!(pool.install(run), first);
    }
}
