//! Worked examples for every public operation.

use qturan::certifiers::{
    bipartite_regularity_deviation, pair_deviation, quad_value, quad_vertex_deviation,
    relative_density, tcl_check, triangle_count_tripartite, weak_deviation, xyz_deviation,
    xyz_value, Method, Mode, SampleConfig, Triad,
};
use qturan::constructions::{
    gen_colouring_kk_free, gen_leader_tan, gen_oriented_4hg, gen_party_of_six, gen_rainbow_1_27,
    gen_sk_free, gen_sk_free_with_colouring, gen_tournament_3hg, rainbow, tournament_hypergraph,
    PairColouring, Tournament, TripleOrientation, BLUE, GREEN, RED,
};
use qturan::detectors::{
    check_vanishing_condition, embed_small, find_clique3, find_f4, find_k4_minus, find_sk,
    link_colouring_witness, ApexPosition,
};
use qturan::graph::BipartiteGraph;
use qturan::multipartite::{
    find_triangle_mp, half_split, mean_square_profile, proof_diagnostics, MultipartiteGraph,
};
use qturan::rational::rat;
use qturan::{oracle, read_hypergraph, Hypergraph3, Hypergraph4};

fn t5() -> Tournament {
    // i -> i+1 and i -> i+2 (mod 5): every out-degree is 2.
    Tournament::from_fn(5, |u, v| matches!(v - u, 1 | 2)).unwrap()
}

#[test]
fn counting_on_small_hypergraphs() {
    let k6 = Hypergraph3::complete(6).unwrap();
    assert_eq!(k6.count_e_u(&[0, 2, 3, 5]).unwrap(), 4);
    assert_eq!(Hypergraph3::empty(6).unwrap().count_e_u(&[0, 1, 2, 3]).unwrap(), 0);
    assert!(k6.count_e_u(&[6]).is_err());

    let t = t5();
    assert!((0..5).all(|v| t.out_degree(v) == 2));
    let h = tournament_hypergraph(&t).unwrap();
    assert_eq!(h.count_e_u(&[0, 1, 2, 3, 4]).unwrap(), 5);

    assert_eq!(k6.count_e_xyz(&[0, 1], &[2, 3, 4], &[5, 0, 1]).unwrap(), 12);
    let k9 = Hypergraph3::complete(9).unwrap();
    assert_eq!(k9.count_e_xyz(&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]).unwrap(), 24);
    let all: Vec<usize> = (0..9).collect();
    assert_eq!(k9.count_e_xyz(&all, &all, &all).unwrap(), 9 * 8 * 7);
    let e = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
    assert_eq!(e.count_e_xyz(&[0], &[1], &[1, 2]).unwrap(), 1);
}

#[test]
fn link_graphs_and_induced() {
    let k5 = Hypergraph3::complete(5).unwrap();
    let l = k5.link_graph(0).unwrap();
    assert_eq!(l.edge_count(), 6);
    assert_eq!(l.degree(0), 0);
    assert_eq!(Hypergraph3::empty(5).unwrap().link_graph(2).unwrap().edge_count(), 0);

    let t = t5();
    let h = tournament_hypergraph(&t).unwrap();
    for a in 0..5 {
        let through_a = h.edge_iter().filter(|e| e.contains(&a)).count();
        assert_eq!(h.link_graph(a).unwrap().edge_count(), through_a);
    }

    assert_eq!(k5.induced(&[0, 1, 2, 3, 4]).unwrap(), k5);
    let k6 = Hypergraph3::complete(6).unwrap();
    assert_eq!(k6.induced(&[1, 3, 4, 5]).unwrap(), Hypergraph3::complete(4).unwrap());
    let single = Hypergraph3::from_edges(4, [[0, 1, 2]]).unwrap();
    assert_eq!(single.induced(&[0, 1, 3]).unwrap().edge_count(), 0);
}

#[test]
fn text_format() {
    let h = read_hypergraph("3 3 1\n0 1 2\n").unwrap().into_three().unwrap();
    assert_eq!(h.edge_count(), 1);
    assert!(read_hypergraph("5 3 0\n").is_err());
    let g = gen_tournament_3hg(30, 4).unwrap();
    let text = qturan::io::write_hypergraph3(&g);
    assert_eq!(read_hypergraph(&text).unwrap().to_text(), text);
}

#[test]
fn tournament_construction() {
    for seed in 0..4 {
        let h = gen_tournament_3hg(40, seed).unwrap();
        assert_eq!(find_k4_minus(&h, false), None);
    }
    assert!(gen_tournament_3hg(3, 0).is_err());
    // Some seed realizes a regular tournament on five vertices.
    let seed = (0..10_000u64)
        .find(|&s| {
            let t = Tournament::seeded(5, s).unwrap();
            (0..5).all(|v| t.out_degree(v) == 2)
        })
        .expect("a regular seed exists");
    assert_eq!(gen_tournament_3hg(5, seed).unwrap().edge_count(), 5);
}

#[test]
fn colouring_constructions() {
    assert_eq!(gen_colouring_kk_free(30, 3, 1).unwrap().edge_count(), 0);
    assert!(gen_colouring_kk_free(30, 2, 1).is_err());
    let h = gen_colouring_kk_free(40, 4, 2).unwrap();
    assert!(find_clique3(&h, 4).unwrap().is_none());

    let p = gen_party_of_six(40, 1).unwrap();
    assert!(find_clique3(&p, 6).unwrap().is_none());
    assert!(find_clique3(&p, 5).unwrap().is_some());

    let psi = PairColouring::from_fn(3, 3, |u, v| match (u, v) {
        (0, 1) => RED,
        (0, 2) => BLUE,
        _ => GREEN,
    })
    .unwrap();
    assert_eq!(rainbow(&psi).unwrap().edge_count(), 1);
    let r = gen_rainbow_1_27(12, 5).unwrap();
    assert!(check_vanishing_condition(&r.induced(&[0, 1, 2, 3, 4, 5]).unwrap())
        .unwrap()
        .is_some());
}

#[test]
fn rainbow_subhypergraphs_satisfy_the_condition_in_natural_order() {
    let psi = PairColouring::seeded(6, 3, 17).unwrap();
    let h = rainbow(&psi).unwrap();
    for e in h.edge_iter() {
        let [x, y, z] = e;
        assert_eq!(psi.pattern(x, y, z), [RED, BLUE, GREEN]);
    }
}

#[test]
fn sk_free_construction() {
    let h = gen_sk_free(40, 4, 3).unwrap();
    assert!(find_sk(&h, 4).unwrap().is_none());
    assert!(gen_sk_free(40, 3, 3).is_err());
    let (h, psi) = gen_sk_free_with_colouring(2, 4, 0).unwrap();
    let lc = link_colouring_witness(&h, Some(&psi), 0).unwrap();
    assert_eq!(lc.classes.iter().map(Vec::len).sum::<usize>(), 1);
}

#[test]
fn four_uniform_constructions() {
    // n = 4: over all 16 orientations of the four triples exactly 2 give an edge.
    let mut edges = 0;
    for bits in 0..16u32 {
        let mut i = 0;
        let o = TripleOrientation::from_fn(4, |_, _, _| {
            i += 1;
            bits >> (i - 1) & 1 == 1
        })
        .unwrap();
        edges += qturan::constructions::oriented_4hg(&o).unwrap().edge_count();
    }
    assert_eq!(edges, 2);
    assert_eq!(gen_oriented_4hg(4, 0).unwrap().n(), 4);

    let h = gen_oriented_4hg(30, 2).unwrap();
    assert_eq!(find_f4(&h), None);
    let lt = gen_leader_tan(30, 2).unwrap();
    assert_eq!(find_f4(&lt), None);

    // Arcs x -> y -> z -> x orient the triple as the cycle (x, y, z).
    let t = Tournament::from_fn(3, |u, v| (u, v) != (0, 2)).unwrap();
    assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
    let o = TripleOrientation::leader_tan(&t).unwrap();
    assert!(o.is_ascending(0, 1, 2));
}

#[test]
fn weak_deviation_examples() {
    let h = gen_tournament_3hg(12, 7).unwrap();
    let d = rat(1, 4);
    let r = weak_deviation(&h, Some(d), Mode::exact()).unwrap();
    assert_eq!(r.max_deviation, oracle::weak_deviation(&h, &d).unwrap());
    assert_eq!(r.method, Method::Exact);
    let s = weak_deviation(&h, Some(d), Mode::search(1)).unwrap();
    assert!(s.max_deviation <= r.max_deviation);
}

#[test]
fn xyz_examples() {
    let k = Hypergraph3::complete(9).unwrap();
    assert_eq!(xyz_value(&k, &rat(1, 1), &[0, 1], &[2, 3, 4], &[5, 6]).unwrap(), rat(0, 1));
    let r = xyz_deviation(&k, Some(rat(1, 1)), &SampleConfig::new(30, 2)).unwrap();
    assert_eq!(r.max_deviation, rat(0, 1));
    let e = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
    assert_eq!(xyz_value(&e, &rat(0, 1), &[0], &[1], &[2]).unwrap(), rat(1, 1));
}

#[test]
fn pair_examples() {
    let h = gen_colouring_kk_free(16, 4, 3).unwrap();
    let d = rat(1, 2);
    let r = pair_deviation(&h, Some(d), Mode::exact()).unwrap();
    // The witness, recounted pair by pair, attains the reported value.
    let u = &r.witness.sets[0];
    let mut e = 0i128;
    for &[x, y] in &r.witness.pairs {
        e += u.iter().filter(|&&w| h.has_edge(w, x, y)).count() as i128;
    }
    let vol = (u.len() * r.witness.pairs.len()) as i128;
    assert_eq!((rat(e, 1) - d * vol).abs_sub_zero(), r.max_deviation);
    assert_eq!(
        pair_deviation(&Hypergraph3::empty(9).unwrap(), Some(rat(0, 1)), Mode::exact())
            .unwrap()
            .max_deviation,
        rat(0, 1)
    );
}

trait AbsSubZero {
    fn abs_sub_zero(self) -> Self;
}

impl AbsSubZero for qturan::Rational {
    fn abs_sub_zero(self) -> Self {
        if self < rat(0, 1) {
            -self
        } else {
            self
        }
    }
}

#[test]
fn quad_examples() {
    let k = Hypergraph4::complete(8).unwrap();
    let r = quad_vertex_deviation(&k, Some(rat(1, 1)), &SampleConfig::new(20, 1)).unwrap();
    assert_eq!(r.max_deviation, rat(0, 1));
    let one = Hypergraph4::from_edges(4, [[0, 1, 2, 3]]).unwrap();
    assert_eq!(quad_value(&one, &rat(0, 1), [&[0], &[1], &[2], &[3]]).unwrap(), rat(1, 1));
    let h = gen_oriented_4hg(60, 3).unwrap();
    let r = quad_vertex_deviation(&h, Some(rat(1, 8)), &SampleConfig::new(500, 3)).unwrap();
    assert!(r.eta <= 0.01, "eta = {}", r.eta);
}

#[test]
fn bipartite_examples() {
    let r = bipartite_regularity_deviation(&BipartiteGraph::complete(6, 6), Some(rat(1, 1)), Mode::exact())
        .unwrap();
    assert_eq!(r.max_deviation, rat(0, 1));
    let p = MultipartiteGraph::random(&[10, 10], 0.5, 21);
    let g = p.bipartite(0, 1);
    let d = rat(1, 2);
    let fast = bipartite_regularity_deviation(&g, Some(d), Mode::exact()).unwrap();
    assert_eq!(fast.max_deviation, oracle::bipartite_deviation(&g, &d).unwrap());
}

#[test]
fn triangle_counting_examples() {
    let p = MultipartiteGraph::complete(&[3, 4, 5]);
    assert_eq!(triangle_count_tripartite(&p).unwrap(), 60);
    let r = tcl_check(&p, rat(1, 1), Mode::exact()).unwrap();
    assert!(r.holds && r.bound == rat(60, 1));
    for seed in 0..3 {
        let p = MultipartiteGraph::random(&[12, 12, 12], 0.25, seed);
        let r = tcl_check(&p, rat(1, 4), Mode::exact()).unwrap();
        assert_eq!(r.triangles, oracle::triangle_count(&p));
        assert!(r.holds);
    }
}

#[test]
fn relative_density_examples() {
    let h = gen_tournament_3hg(60, 9).unwrap();
    let parts: Vec<Vec<usize>> = (0..3).map(|i| (20 * i..20 * (i + 1)).collect()).collect();
    let t = Triad::complete([&parts[0], &parts[1], &parts[2]]);
    let r = relative_density(&h, &t).unwrap();
    assert!((r.value_f64 - 0.25).abs() <= 0.05, "{}", r.value_f64);
    assert_eq!(r.triangles, 8000);
}

#[test]
fn k4_minus_examples() {
    let k4 = Hypergraph3::complete(4).unwrap();
    let w = find_k4_minus(&k4, true).unwrap();
    assert_eq!((w.apex, w.apex_position), (Some(0), Some(ApexPosition::Min)));
    let mut found = 0;
    for seed in 0..10 {
        let h = qturan::constructions::gen_random_3hg(40, 0.3, seed).unwrap();
        let w = find_k4_minus(&h, true);
        let naive = oracle::find_k4_minus(&h, true);
        assert_eq!(w.as_ref().map(|w| (w.vertices.clone(), w.apex.unwrap())), naive.map(|(q, a)| (q.to_vec(), a)));
        found += w.is_some() as usize;
    }
    assert_eq!(found, 10);
}

#[test]
fn embedding_examples() {
    let f = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
    let h = gen_tournament_3hg(20, 1).unwrap();
    assert!(embed_small(&f, &h, false).unwrap().is_some());
    let k4m = Hypergraph3::from_edges(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
    assert_eq!(embed_small(&k4m, &gen_tournament_3hg(40, 2).unwrap(), false).unwrap(), None);
}

#[test]
fn multipartite_examples() {
    let g = half_split(3, 10).unwrap();
    assert_eq!(g.edge_count(), 150);
    assert_eq!(find_triangle_mp(&g), None);
    let d = proof_diagnostics(&g, &rat(1, 20), None).unwrap();
    assert!(d.pairs.iter().all(|p| p.q_sizes[0] == 0));
    let mut hits = 0;
    for seed in 0..50 {
        hits += find_triangle_mp(&MultipartiteGraph::random(&[30, 30, 30], 0.7, seed)).is_some() as usize;
    }
    assert_eq!(hits, 50);
    let p = mean_square_profile(&MultipartiteGraph::complete(&[2, 3, 4])).unwrap();
    assert!(p.satisfies_triangle_hypothesis(&rat(1, 2)));
}
