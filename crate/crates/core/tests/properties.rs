use erdos_rogers::blocks::{build_h, random_blocks, BlockGraph};
use erdos_rogers::containers::{
    build_scaled_subhypergraph, container_step, delta_ell, iterate_containers, select_scale, ContainerParams,
    IterateConfig, UniformHypergraph,
};
use erdos_rogers::geometry::unital_incidence;
use erdos_rogers::graph::{alpha_s_exact, alpha_s_greedy, enumerate_ks, has_clique, BitSet, DenseGraph};
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = DenseGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = DenseGraph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn is_clique(g: &DenseGraph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// `α_s` by scanning every vertex subset.
fn brute_alpha(g: &DenseGraph, s: usize) -> usize {
    let cliques = enumerate_ks(g, s);
    subsets(g.n())
        .filter(|set| !cliques.iter().any(|c| c.iter().all(|v| set.contains(v))))
        .map(|set| set.len())
        .max()
        .unwrap_or(0)
}

fn small_h(q: u64, s: usize, seed: u64) -> BlockGraph {
    static F2: OnceLock<Arc<erdos_rogers::geometry::BipartiteIncidence>> = OnceLock::new();
    static F3: OnceLock<Arc<erdos_rogers::geometry::BipartiteIncidence>> = OnceLock::new();
    let cell = if q == 2 { &F2 } else { &F3 };
    let f = cell.get_or_init(|| Arc::new(unital_incidence(q).unwrap().incidence)).clone();
    let part = random_blocks(&f, s, seed).unwrap();
    build_h(f, part).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn greedy_never_beats_exact(g in graph_strategy(12), s in 2usize..=3, seed in any::<u64>()) {
        let exact = alpha_s_exact(&g, s, u64::MAX);
        let greedy = alpha_s_greedy(&g, s, 20, seed);
        prop_assert!(exact.exact);
        prop_assert!(greedy.value <= exact.value);
        prop_assert_eq!(exact.value, brute_alpha(&g, s));
        prop_assert_eq!(exact.witness.len(), exact.value);
        prop_assert_eq!(exact.value == g.n(), enumerate_ks(&g, s).is_empty());
    }

    #[test]
    fn deleting_a_vertex_never_increases_alpha(g in graph_strategy(11), s in 2usize..=3, v in any::<prop::sample::Index>()) {
        let v = v.index(g.n());
        let before = alpha_s_exact(&g, s, u64::MAX).value;
        let after = alpha_s_exact(&g.without_vertex(v), s, u64::MAX).value;
        prop_assert!(after <= before && before <= after + 1);
    }

    #[test]
    fn has_clique_matches_subset_oracle(g in graph_strategy(8), k in 1usize..=5) {
        let oracle = subsets(g.n()).filter(|s| s.len() == k && is_clique(&g, s)).min();
        let found = has_clique(&g, k);
        prop_assert_eq!(found.is_some(), oracle.is_some());
        if let Some(c) = found {
            prop_assert!(c.len() == k && is_clique(&g, &c));
            prop_assert_eq!(Some(c), oracle);
        }
    }

    #[test]
    fn bitset_matches_btreeset(a in proptest::collection::btree_set(0usize..200, 0..60), b in proptest::collection::btree_set(0usize..200, 0..60)) {
        let (x, y) = (BitSet::from_indices(200, a.iter().copied()), BitSet::from_indices(200, b.iter().copied()));
        let mut and = x.clone();
        and.intersect_with(&y);
        prop_assert_eq!(and.to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
        let mut or = x.clone();
        or.union_with(&y);
        prop_assert_eq!(or.to_vec(), a.union(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(x.intersection_count(&y), a.intersection(&b).count());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy(15)) {
        let back = DenseGraph::parse_text(&g.to_text()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn codegrees_do_not_increase_with_ell(
        edges in proptest::collection::vec(proptest::collection::btree_set(0u32..10, 3), 1..30)
    ) {
        let hg = UniformHypergraph::new(3, 10, edges.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap();
        let d: Vec<u64> = (1..=3).map(|l| delta_ell(&hg, l).unwrap()).collect();
        prop_assert!(d[0] >= d[1] && d[1] >= d[2] && d[2] == 1);
        prop_assert_eq!(UniformHypergraph::parse_text(&hg.to_text()).unwrap(), hg);
    }

    #[test]
    fn fingerprints_are_short_and_containers_cover(
        n in 3usize..=9,
        s in 2usize..=3,
        raw in proptest::collection::vec(proptest::collection::btree_set(0u32..9, 3), 1..12),
    ) {
        let edges: BTreeSet<Vec<u32>> = raw
            .into_iter()
            .map(|e| e.into_iter().map(|v| v % n as u32).collect::<BTreeSet<_>>())
            .filter(|e| e.len() >= s)
            .map(|e| e.into_iter().take(s).collect())
            .collect();
        prop_assume!(!edges.is_empty());
        let hg = UniformHypergraph::new(s, n, edges.into_iter().collect()).unwrap();
        let b = (1..=n as u64).find(|&b| {
            erdos_rogers::containers::check_codegree(&hg, b, 1).map(|c| c.pass).unwrap_or(false)
        });
        prop_assume!(b.is_some());
        let params = ContainerParams::integral(s, n, b.unwrap(), 1).unwrap();
        let cap = params.fingerprint_cap();
        let fam = container_step(&hg, params, 1 << 20).unwrap();
        prop_assert!(fam.audit_failures.is_empty(), "{:?}", fam.audit_failures);
        for e in &fam.entries {
            prop_assert!(e.fingerprint.len() <= cap);
        }
        for set in subsets(n).filter(|set| hg.is_independent(set)) {
            prop_assert!(fam.covers(&set), "{:?} uncovered", set);
        }
    }

    #[test]
    fn scaled_edges_are_cliques_with_small_codegree(
        q in 2u64..=3,
        s in 2usize..=3,
        seed in 0u64..1000,
        keep in proptest::collection::vec(any::<bool>(), 280),
    ) {
        let h = small_h(q, s, seed);
        let u: Vec<usize> = (0..h.n()).filter(|&x| keep[x % keep.len()] || x % 5 == 0).collect();
        let Ok(scale) = select_scale(&h, &u) else { return Ok(()) };
        let g = build_scaled_subhypergraph(&h, &scale);
        let sub = h.graph.induced(&u);
        let cliques: BTreeSet<Vec<usize>> = enumerate_ks(&sub, s)
            .into_iter()
            .map(|c| c.into_iter().map(|i| u[i]).collect())
            .collect();
        for e in &g.edges {
            let global: Vec<usize> = e.iter().map(|&v| g.ground[v as usize]).collect();
            prop_assert!(cliques.contains(&global));
        }
        for ell in 2..=s {
            let d = delta_ell(&g, ell).unwrap() as f64;
            prop_assert!(d <= scale.gamma.powi((s - ell) as i32) + 1e-9);
        }
    }
}

#[test]
fn iterated_lineages_shrink() {
    for seed in 0..6 {
        let h = small_h(2, 2, seed);
        let cfg = IterateConfig { threshold: Some(8), ..Default::default() };
        let (fam, _) = iterate_containers(&h, &cfg).unwrap();
        for e in &fam.entries {
            let o = &fam.origins[e.origin];
            if o.depth > 0 {
                assert!(e.container.len() < o.u_size);
                assert!(e.container.len() <= e.size_bound);
            }
        }
        if fam.abort.is_none() {
            assert!(fam.max_container() <= 8);
        }
    }
}
