use clutterlab::clutter::{
    complement_connected_clutter, connected_clutter, find_elimination_order, verify_certificate, SearchOutcome, Strategy as Search,
};
use clutterlab::enumerate::are_isomorphic;
use clutterlab::ideal::{connected_ideal, MonomialIdeal};
use clutterlab::io::{clutter_from_json, clutter_to_json, graph_from_json, graph_to_json, ideal_from_json, ideal_to_json};
use clutterlab::{Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn complement_clutter_sits_inside_the_complement_graph_clutter(g in arb_graph(7), r in 1usize..=4) {
        let lhs = complement_connected_clutter(&g, r).unwrap();
        let rhs = connected_clutter(&g.complement(), r).unwrap();
        prop_assert!(lhs.edges().iter().all(|e| rhs.contains(*e)));
        if r <= 2 {
            prop_assert_eq!(lhs.len(), rhs.len());
        }
    }

    #[test]
    fn connected_clutter_edges_are_connected_sets(g in arb_graph(8), r in 1usize..=3) {
        let c = connected_clutter(&g, r).unwrap();
        let all = VertexSet::full(g.n()).subsets_of_size(r + 1).count();
        prop_assert_eq!(c.len() + complement_connected_clutter(&g, r).unwrap().len(), all);
        for e in c.edges() {
            prop_assert_eq!(e.len(), r + 1);
            prop_assert!(g.is_connected_subset(*e).unwrap());
        }
    }

    #[test]
    fn found_certificates_replay(g in arb_graph(7), r in 1usize..=3) {
        let c = complement_connected_clutter(&g, r).unwrap();
        let (outcome, _) = find_elimination_order(&c, Search::Backtracking, 1_000_000);
        if let SearchOutcome::Found(cert) = &outcome {
            prop_assert!(verify_certificate(&c, cert).is_ok());
            prop_assert_eq!(&cert.source_hash, &c.source_hash());
        }
        if r == 1 {
            // Two-uniform clutters are chordal exactly when the graph is.
            prop_assert_eq!(matches!(outcome, SearchOutcome::Found(_)), g.complement().is_chordal());
        }
    }

    #[test]
    fn relabeling_preserves_clutter_sizes(g in arb_graph(7), seed in any::<u64>(), r in 1usize..=3) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm).unwrap();
        prop_assert!(are_isomorphic(&g, &h).unwrap());
        prop_assert_eq!(connected_clutter(&g, r).unwrap().len(), connected_clutter(&h, r).unwrap().len());
    }

    #[test]
    fn splitting_with_one_part_relabels(g in arb_graph(7), x in 0usize..7) {
        prop_assume!(x < g.n() && g.degree(x) > 0);
        let split = g.split_vertex(x, &[g.neighbors(x)]).unwrap();
        prop_assert_eq!(split.n(), g.n());
        prop_assert!(are_isomorphic(&split, &g).unwrap());
    }

    #[test]
    fn ideal_powers_are_products(g in arb_graph(6), r in 1usize..=2) {
        let i = connected_ideal(&g, r).unwrap();
        prop_assume!(!i.is_zero());
        prop_assert_eq!(i.power(2).unwrap(), i.product(&i).unwrap());
        let again = MonomialIdeal::new(i.n(), i.gens().to_vec()).unwrap();
        prop_assert_eq!(again, i.clone());
        prop_assert_eq!(i.gens().len(), connected_clutter(&g, r).unwrap().len());
    }

    #[test]
    fn json_round_trips(g in arb_graph(8), r in 1usize..=3) {
        let s = graph_to_json(&g);
        prop_assert_eq!(graph_to_json(&graph_from_json(&s).unwrap()), s);
        let c = complement_connected_clutter(&g, r).unwrap();
        let s = clutter_to_json(&c);
        prop_assert_eq!(clutter_to_json(&clutter_from_json(&s).unwrap()), s);
        let i = connected_ideal(&g, r).unwrap();
        let s = ideal_to_json(&i);
        prop_assert_eq!(ideal_to_json(&ideal_from_json(&s).unwrap()), s);
    }
}
