mod common;

use mutvis::construct::{
    bf_mv_set, bf_total_mv_set, ccc3_stored_optimum, hypercube_stored_optimum,
};
use mutvis::solver::solve;
use mutvis::topology::{
    bf_index, bf_level_span, bf_natural_route, ccc_index, ccc_natural_distance, gen_butterfly,
    gen_ccc, gen_hypercube, BfLabel, BitString, CccLabel, RouteDirection,
};
use mutvis::{
    brute_force_mv, bypass_vertices, is_convex, is_mutual_visibility_set, is_pair_visible,
    is_total_mutual_visibility_set, max_mv_set, Exec, Graph, SetKind, SolveOptions, VertexSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> VertexSet {
    VertexSet::from_indices(n, (0..n).filter(|_| rng.random_bool(p)))
}

#[test]
fn pair_visibility_matches_deletion_oracle() {
    let mut mismatches = 0;
    for seed in 0..200u64 {
        let g = common::seeded_graph(seed, 10);
        let n = g.vertex_count();
        let adj = common::adjacency(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..4 {
            let p = rng.random_range(0.1..0.7);
            let x = random_subset(&mut rng, n, p);
            let mask = common::to_mask(n, &x);
            for u in 0..n {
                for v in 0..n {
                    if is_pair_visible(&g, u, v, &x).unwrap()
                        != common::pair_visible(&adj, &mask, u, v)
                    {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn set_checkers_match_oracle() {
    for seed in 0..150u64 {
        let g = common::seeded_graph(seed, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let x = random_subset(&mut rng, g.vertex_count(), 0.4);
            assert_eq!(
                is_mutual_visibility_set(&g, &x).unwrap().valid,
                common::mutual(&g, &x),
                "seed {seed}"
            );
            assert_eq!(
                is_total_mutual_visibility_set(&g, &x).unwrap().valid,
                common::total(&g, &x),
                "seed {seed}"
            );
        }
    }
}

#[test]
fn solver_matches_brute_force_on_random_graphs() {
    for seed in 0..100u64 {
        let g = common::seeded_graph(1000 + seed, 12);
        for kind in [SetKind::Mutual, SetKind::Total] {
            let oracle = brute_force_mv(&g, kind).unwrap();
            let r = solve(&g, &SolveOptions::new(kind)).unwrap();
            assert!(r.proven_optimal);
            assert_eq!(r.optimum, oracle.optimum, "seed {seed} {kind:?}");
            let valid = match kind {
                SetKind::Mutual => common::mutual(&g, &r.witness),
                SetKind::Total => common::total(&g, &r.witness),
            };
            assert!(valid, "seed {seed} {kind:?}");
        }
    }
}

#[test]
fn solver_matches_brute_force_on_named_graphs() {
    let mut graphs = vec![
        gen_hypercube(3).unwrap(),
        gen_butterfly(1).unwrap(),
        gen_butterfly(2).unwrap(),
    ];
    graphs.extend((4..=8).map(|n| Graph::cycle(n).unwrap()));
    for g in graphs {
        for kind in [SetKind::Mutual, SetKind::Total] {
            let a = solve(&g, &SolveOptions::new(kind)).unwrap();
            let b = brute_force_mv(&g, kind).unwrap();
            assert_eq!(a.optimum, b.optimum);
        }
    }
}

#[test]
fn solver_is_deterministic_single_worker() {
    let g = common::seeded_graph(7, 12);
    let opts = SolveOptions::mutual().with_exec(Exec::Sequential);
    let first = max_mv_set(&g, &opts).unwrap();
    for _ in 0..3 {
        assert_eq!(max_mv_set(&g, &opts).unwrap().witness, first.witness);
    }
    let par = max_mv_set(&g, &SolveOptions::mutual().with_exec(Exec::Parallel)).unwrap();
    assert_eq!(par.optimum, first.optimum);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hereditary(seed in any::<u64>(), keep in any::<u64>(), total in any::<bool>()) {
        let g = common::seeded_graph(seed, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if total { SetKind::Total } else { SetKind::Mutual };
        let x = common::greedy_set(&g, &mut rng, |g, s| kind.check(g, s).unwrap().valid);
        let sub = VertexSet::from_indices(g.vertex_count(), x.iter().filter(|&v| keep >> v & 1 == 1));
        prop_assert!(kind.check(&g, &sub).unwrap().valid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn total_implies_mutual(seed in any::<u64>(), p in 0.05f64..0.6) {
        let g = common::seeded_graph(seed, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_subset(&mut rng, g.vertex_count(), p);
        if is_total_mutual_visibility_set(&g, &x).unwrap().valid {
            prop_assert!(is_mutual_visibility_set(&g, &x).unwrap().valid);
        }
    }

    #[test]
    fn restriction_to_convex_subgraph(seed in any::<u64>(), a in 0usize..12, b in 0usize..12) {
        let g = common::seeded_graph(seed, 12);
        let n = g.vertex_count();
        let adj = common::adjacency(&g);
        let hull = common::convex_hull(&adj, &[a % n, b % n]);
        let h = VertexSet::from_indices(n, (0..n).filter(|&v| hull[v]));
        prop_assert!(is_convex(&g, &h).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::greedy_set(&g, &mut rng, |g, s| is_mutual_visibility_set(g, s).unwrap().valid);
        let (sub, map) = g.induced_subgraph(&h).unwrap();
        let restricted = VertexSet::from_indices(map.len(), (0..map.len()).filter(|&i| x.contains(map[i])));
        prop_assert!(is_mutual_visibility_set(&sub, &restricted).unwrap().valid);
    }

    #[test]
    fn distances_change_by_at_most_one_across_edges(seed in any::<u64>(), s in 0usize..12) {
        let g = common::seeded_graph(seed, 12);
        let row = g.distances_from(s % g.vertex_count()).unwrap();
        for (u, v) in g.edges() {
            prop_assert!(row.get(u).abs_diff(row.get(v)) <= 1);
        }
    }

    #[test]
    fn convexity_matches_hull_oracle(seed in any::<u64>(), p in 0.1f64..0.9) {
        let g = common::seeded_graph(seed, 10);
        let n = g.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_subset(&mut rng, n, p);
        prop_assume!(!x.is_empty());
        let seeds: Vec<usize> = x.iter().collect();
        let hull = common::convex_hull(&common::adjacency(&g), &seeds);
        let is_own_hull = (0..n).all(|v| hull[v] == x.contains(v));
        prop_assert_eq!(is_convex(&g, &x).unwrap(), is_own_hull);
    }
}

#[test]
fn bypass_all_or_nothing_on_transitive_topologies() {
    let graphs = (2..=6)
        .map(|d| gen_hypercube(d).unwrap())
        .chain((3..=5).map(|d| gen_ccc(d).unwrap()));
    for g in graphs {
        let r = bypass_vertices(&g).unwrap();
        assert!(r.bp == 0 || r.bp == g.vertex_count());
    }
}

#[test]
fn ccc_distance_matches_bfs() {
    for d in 3..=5 {
        let g = gen_ccc(d).unwrap();
        let adj = common::adjacency(&g);
        let labels: Vec<CccLabel> = (0..d)
            .flat_map(|l| {
                (0..1u64 << d)
                    .map(move |x| CccLabel::new(l, BitString::new(x, d).unwrap()).unwrap())
            })
            .collect();
        for &u in &labels {
            let dist = common::bfs(&adj, ccc_index(d, u), &vec![false; g.vertex_count()]);
            for &v in &labels {
                assert_eq!(
                    Some(ccc_natural_distance(d, u, v).unwrap()),
                    dist[ccc_index(d, v)],
                    "{u} {v}"
                );
            }
        }
    }
}

#[test]
fn butterfly_routes_are_shortest() {
    for d in 1..=6 {
        let g = gen_butterfly(d).unwrap();
        let adj = common::adjacency(&g);
        for i in 0..1u64 << d {
            let bi = BitString::new(i, d).unwrap();
            let src_top = bf_index(d, BfLabel::new(0, bi).unwrap());
            let src_bottom = bf_index(d, BfLabel::new(d, bi).unwrap());
            let top = common::bfs(&adj, src_top, &vec![false; g.vertex_count()]);
            let bottom = common::bfs(&adj, src_bottom, &vec![false; g.vertex_count()]);
            for j in 0..1u64 << d {
                let bj = BitString::new(j, d).unwrap();
                for (dir, dist) in [
                    (RouteDirection::TopDown, &top),
                    (RouteDirection::BottomUp, &bottom),
                ] {
                    let route = bf_natural_route(d, bi, bj, dir).unwrap();
                    assert_eq!(route.len(), d + 1);
                    for w in route.windows(2) {
                        assert!(g.has_edge(bf_index(d, w[0]), bf_index(d, w[1])));
                    }
                    assert_eq!(dist[bf_index(d, *route.last().unwrap())], Some(d));
                }
            }
        }
    }
}

#[test]
fn top_down_shortest_paths_are_unique() {
    for d in 1..=5 {
        let g = gen_butterfly(d).unwrap();
        let adj = common::adjacency(&g);
        for i in 0..1u64 << d {
            for j in 0..1u64 << d {
                let u = bf_index(d, BfLabel::new(0, BitString::new(i, d).unwrap()).unwrap());
                let v = bf_index(d, BfLabel::new(d, BitString::new(j, d).unwrap()).unwrap());
                assert_eq!(common::count_shortest_paths(&adj, u, v), 1);
            }
        }
    }
}

#[test]
fn shortest_paths_stay_in_level_band() {
    for d in 1..=4 {
        let g = gen_butterfly(d).unwrap();
        let adj = common::adjacency(&g);
        let cols = 1usize << d;
        let label = |v: usize| {
            BfLabel::new(v / cols, BitString::new((v % cols) as u64, d).unwrap()).unwrap()
        };
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let (lo, hi) = bf_level_span(d, label(u), label(v)).unwrap();
                for path in common::all_shortest_paths(&adj, u, v) {
                    assert!(
                        path.iter().all(|&w| (lo..=hi).contains(&(w / cols))),
                        "d={d} {u} {v}"
                    );
                }
            }
        }
    }
}

#[test]
fn sub_ccc_of_subcube_supervertices_is_convex() {
    for d in 3..=4usize {
        let g = gen_ccc(d).unwrap();
        let cols = 1usize << d;
        for fixed in 1u32..1 << d {
            // Every assignment of values to the fixed positions.
            for values in 0..cols {
                if values & !(fixed as usize) != 0 {
                    continue;
                }
                let keep = |x: usize| x & fixed as usize == values;
                let h = VertexSet::from_indices(
                    g.vertex_count(),
                    (0..g.vertex_count()).filter(|&v| keep(v % cols)),
                );
                assert!(
                    is_convex(&g, &h).unwrap(),
                    "d={d} fixed={fixed:b} values={values:b}"
                );
            }
        }
    }
}

#[test]
fn certificates_satisfy_structural_facts() {
    for d in 1..=6 {
        let mv = bf_mv_set(d).unwrap();
        let cols = 1usize << d;
        let mut per_column = vec![0; cols];
        for v in mv.to_set().unwrap().iter() {
            per_column[v % cols] += 1;
        }
        assert!(per_column.iter().all(|&c| c <= 2));

        let mut t = bf_total_mv_set(d).unwrap();
        let g = t.topology.generate().unwrap();
        assert!(t.verify().unwrap().valid);
        assert!(
            is_mutual_visibility_set(&g, &t.to_set().unwrap())
                .unwrap()
                .valid
        );
    }
    for (d, size) in [(1, 2), (2, 3), (3, 5), (4, 9), (5, 16)] {
        let mut c = hypercube_stored_optimum(d).unwrap();
        assert_eq!(c.len(), size);
        assert!(c.verify().unwrap().valid);
    }
    let mut c = ccc3_stored_optimum().unwrap();
    assert_eq!(c.len(), 6);
    assert!(c.verify().unwrap().valid);
}
