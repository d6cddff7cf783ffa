use canon_core::embedding::{enumerate_rotation_systems, rotation_system_count, euler_genus, trace_faces};
use canon_core::format::{parse_cg, parse_graph6, write_cg, write_graph6};
use canon_core::invariant::{bf_invariant, wl1_refine};
use canon_core::oracle::{automorphisms, orbits, rigidity_index};
use canon_core::rigidity::{canon_rigidity, is_fixing_bf};
use canon_core::separator::canon_separator;
use canon_core::{apply_permutation, are_isomorphic_bf, encode, ColoredGraph, Invariant, Labeling};
use proptest::prelude::*;

fn graph(max_n: usize, colored: bool) -> impl Strategy<Value = ColoredGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(0u64..3, if colored { n } else { 0 }),
        )
            .prop_map(move |(bits, colors)| {
                let mut g = ColoredGraph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                for (v, &c) in colors.iter().enumerate() {
                    // color 0 leaves the vertex plain
                    if c > 0 {
                        g.add_color(v, c);
                    }
                }
                g
            })
    })
}

fn with_relabeling(max_n: usize, colored: bool) -> impl Strategy<Value = (ColoredGraph, Labeling)> {
    graph(max_n, colored).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, p)| (g, Labeling::new(p).unwrap()))
    })
}

fn form(g: &ColoredGraph, sigma: &Labeling) -> Vec<u8> {
    encode(&apply_permutation(g, sigma).unwrap()).as_bytes().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn relabeling_round_trips((g, sigma) in with_relabeling(9, true)) {
        let there = apply_permutation(&g, &sigma).unwrap();
        prop_assert_eq!(apply_permutation(&there, &sigma.inverse()).unwrap(), g);
    }

    #[test]
    fn encoding_is_injective(a in graph(5, true), b in graph(5, true)) {
        prop_assert_eq!(encode(&a) == encode(&b), a == b);
    }

    #[test]
    fn text_formats_round_trip(g in graph(12, true)) {
        prop_assert_eq!(parse_cg(&write_cg(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g.uncolored());
    }

    #[test]
    fn backends_ignore_labels((g, sigma) in with_relabeling(7, true)) {
        let h = apply_permutation(&g, &sigma).unwrap();
        for f in [Invariant::WL1, Invariant::wlk(2).unwrap(), Invariant::BRUTE_FORCE] {
            prop_assert_eq!(f.eval(&g).unwrap(), f.eval(&h).unwrap(), "{}", f);
        }
    }

    #[test]
    fn brute_force_is_complete(a in graph(6, true), b in graph(6, true)) {
        let same_code = bf_invariant(&a).unwrap() == bf_invariant(&b).unwrap();
        let iso = a.n() == b.n() && are_isomorphic_bf(&a, &b).unwrap().is_some();
        prop_assert_eq!(same_code, iso);
    }

    #[test]
    fn separator_forms_ignore_labels((g, sigma) in with_relabeling(8, true), r in 1usize..=3) {
        let h = apply_permutation(&g, &sigma).unwrap();
        let cg = canon_separator(&g, r, &Invariant::BRUTE_FORCE).unwrap();
        let ch = canon_separator(&h, r, &Invariant::BRUTE_FORCE).unwrap();
        // the identity fallback carries no canonicity guarantee
        prop_assert_eq!(cg.separators_everywhere(), ch.separators_everywhere());
        prop_assume!(cg.separators_everywhere());
        prop_assert_eq!(form(&g, &cg.labeling), form(&h, &ch.labeling));
    }

    #[test]
    fn rigidity_forms_ignore_labels((g, sigma) in with_relabeling(7, false)) {
        let (rig, _) = rigidity_index(&g).unwrap();
        let r = rig.max(1);
        let h = apply_permutation(&g, &sigma).unwrap();
        let cg = canon_rigidity(&g, r, &Invariant::BRUTE_FORCE).unwrap();
        let ch = canon_rigidity(&h, r, &Invariant::BRUTE_FORCE).unwrap();
        prop_assert!(cg.fixing_sequence.is_some());
        prop_assert_eq!(form(&g, &cg.labeling), form(&h, &ch.labeling));
    }

    #[test]
    fn automorphism_groups_are_groups(g in graph(7, true)) {
        let group = automorphisms(&g).unwrap();
        let factorial: usize = (1..=g.n()).product();
        prop_assert_eq!(factorial % group.order(), 0);
        prop_assert!(group.is_closed());
    }

    #[test]
    fn rigidity_witness_is_minimal(g in graph(7, false)) {
        let (k, witness) = rigidity_index(&g).unwrap();
        prop_assert_eq!(witness.len(), k);
        prop_assert!(is_fixing_bf(&g, &witness).unwrap());
        if k > 0 {
            let mut subset: Vec<usize> = (0..k - 1).collect();
            // no subset one smaller is fixing
            loop {
                prop_assert!(!is_fixing_bf(&g, &subset).unwrap());
                let Some(i) = (0..subset.len()).rev().find(|&i| subset[i] < g.n() - subset.len() + i) else { break };
                subset[i] += 1;
                for j in i + 1..subset.len() { subset[j] = subset[j - 1] + 1; }
            }
        }
    }

    #[test]
    fn wl1_cells_are_unions_of_orbits(g in graph(8, true)) {
        let classes = wl1_refine(&g).classes;
        for orbit in orbits(&g).unwrap() {
            prop_assert!(orbit.iter().all(|&v| classes[v] == classes[orbit[0]]));
        }
    }

    #[test]
    fn faces_cover_every_arc_once(g in graph(6, false), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.is_connected() && g.edge_count() > 0);
        let count = rotation_system_count(&g);
        prop_assume!(count <= 1 << 16);
        let rs = &enumerate_rotation_systems(&g, count)
            .unwrap()
            .nth(pick.index(count as usize))
            .unwrap();
        let mut arcs: Vec<_> = trace_faces(rs).unwrap().into_iter().flat_map(|f| f.arcs).collect();
        let total = arcs.len();
        arcs.sort_unstable();
        arcs.dedup();
        prop_assert_eq!(total, 2 * g.edge_count());
        prop_assert_eq!(arcs.len(), total);
        prop_assert!(euler_genus(rs).is_ok());
    }
}
