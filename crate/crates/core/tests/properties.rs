use proptest::prelude::*;

use fchroma::format::{parse_budget, parse_graph, write_budget, write_graph};
use fchroma::oracle::brute_force_forest;
use fchroma::{
    build_forest, check_forest_condition, check_heterochromatic_tree, check_jinli_forest, truncate_to, Augmentation,
    ColorBudget, ColorId, ColorSet, Edge, EdgeColoredGraph, IntersectionState, Palette, SpanningForest,
};

/// A graph on 1..=7 vertices with up to 4 colors, a budget with caps <= 3,
/// and a mask over the colors.
fn instance() -> impl Strategy<Value = (EdgeColoredGraph, ColorBudget, u32)> {
    (1usize..=7, 1usize..=4).prop_flat_map(|(n, k)| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let slots = pairs.len();
        (
            proptest::collection::vec(proptest::option::weighted(0.6, 0..k as u32), slots),
            proptest::collection::vec(0usize..=3, k),
            0u32..(1 << k),
        )
            .prop_map(move |(colors, caps, mask)| {
                let edges = pairs
                    .iter()
                    .zip(colors)
                    .filter_map(|(&(u, v), c)| c.map(|c| Edge::new(u, v, ColorId(c))))
                    .collect();
                let graph = EdgeColoredGraph::new(n, Palette::numbered(k), edges).unwrap();
                (graph, ColorBudget::from_caps(caps), mask)
            })
    })
}

fn set(mask: u32, k: usize) -> ColorSet {
    (0..k).filter(|c| mask >> c & 1 == 1).map(ColorId::from_index).collect()
}

fn omega_without(graph: &EdgeColoredGraph, colors: &ColorSet) -> usize {
    graph.remove_colors(colors).unwrap().component_count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn colors_partition_the_edges((g, _, mask) in instance()) {
        let k = g.color_count();
        let inside = g.edges_with_colors(&set(mask, k)).unwrap();
        let outside = g.edges_with_colors(&set(!mask & ((1 << k) - 1), k)).unwrap();
        prop_assert_eq!(inside.len() + outside.len(), g.edge_count());
        prop_assert!(inside.iter().all(|e| !outside.contains(e)));
        let without = g.remove_colors(&set(mask, k)).unwrap();
        prop_assert_eq!(without.edge_count(), outside.len());
    }

    #[test]
    fn omega_grows_with_removed_colors((g, _, mask) in instance(), extra in 0u32..16) {
        let k = g.color_count();
        let smaller = set(mask, k);
        let larger = set(mask | extra, k);
        prop_assert!(omega_without(&g, &smaller) <= omega_without(&g, &larger));
        prop_assert!(omega_without(&g, &ColorSet::new()) == g.component_count());
        prop_assert!(omega_without(&g, &g.all_colors()) == g.vertex_count());
    }

    #[test]
    fn decision_is_monotone((g, f, mask) in instance(), w in 1usize..=7) {
        prop_assume!(w <= g.vertex_count());
        let satisfied = check_forest_condition(&g, &f, w).unwrap().is_satisfied();
        let raised: Vec<usize> = f.caps().iter().enumerate().map(|(c, &cap)| cap + (mask >> c & 1) as usize).collect();
        let raised = ColorBudget::from_caps(raised);
        if satisfied {
            prop_assert!(check_forest_condition(&g, &raised, w).unwrap().is_satisfied());
            if w < g.vertex_count() {
                prop_assert!(check_forest_condition(&g, &f, w + 1).unwrap().is_satisfied());
            }
        }
        // The edgeless forest always exists.
        prop_assert!(check_forest_condition(&g, &f, g.vertex_count()).unwrap().is_satisfied());
    }

    #[test]
    fn certificates_match_search((g, f, _) in instance(), w in 1usize..=7) {
        prop_assume!(w <= g.vertex_count());
        let certificate = check_forest_condition(&g, &f, w).unwrap();
        let found = brute_force_forest(&g, &f, w).unwrap();
        prop_assert_eq!(certificate.is_satisfied(), found.is_some());
        if let Some(v) = certificate.violation() {
            prop_assert!(v.recheck(&g, &f, w).unwrap());
        }
        let built = build_forest(&g, &f, w).unwrap();
        prop_assert_eq!(built.is_some(), certificate.is_satisfied());
        if let Some(forest) = built {
            prop_assert!(g.validate_spanning_forest(forest.edge_ids(), &f, w).unwrap());
        }
    }

    #[test]
    fn rainbow_specializations((g, _, _) in instance(), k in 1usize..=6) {
        let uniform = ColorBudget::uniform(g.color_count(), 1);
        prop_assert_eq!(
            check_heterochromatic_tree(&g).unwrap().is_satisfied(),
            check_forest_condition(&g, &uniform, 1).unwrap().is_satisfied()
        );
        let n = g.vertex_count();
        if g.component_count() == 1 && k < n {
            prop_assert_eq!(
                check_jinli_forest(&g, k).unwrap().is_satisfied(),
                check_forest_condition(&g, &uniform, n - k).unwrap().is_satisfied()
            );
        } else {
            prop_assert!(check_jinli_forest(&g, k).is_err());
        }
    }

    /// Every augmentation adds one edge and keeps both constraints; the final
    /// size meets the min-max formula over color subsets.
    #[test]
    fn augmentation_is_sound((g, f, _) in instance()) {
        let mut state = IntersectionState::new(&g, &f).unwrap();
        let mut size = 0;
        while state.augment() == Augmentation::Augmented {
            size += 1;
            prop_assert_eq!(state.len(), size);
            prop_assert!(state.invariants_hold());
            let members = state.members();
            prop_assert!(SpanningForest::new(&g, members.clone()).is_ok());
            for c in g.colors() {
                let used = members.iter().filter(|&&e| g.edge(e).color == c).count();
                prop_assert!(used <= f.cap(c));
            }
        }
        let k = g.color_count();
        let min_max = (0..1u32 << k)
            .map(|mask| {
                let r = set(mask, k);
                g.vertex_count() - omega_without(&g, &r) + f.sum_over(&r)
            })
            .min()
            .unwrap();
        prop_assert_eq!(size, min_max);

        let members = state.members();
        for target in 0..=members.len() {
            let prefix = truncate_to(&members, target).unwrap();
            prop_assert!(SpanningForest::new(&g, prefix).is_ok());
        }
        prop_assert!(truncate_to(&members, members.len() + 1).is_err());
    }

    #[test]
    fn text_round_trip((g, f, _) in instance()) {
        let parsed = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(parse_budget(&write_budget(&f, g.palette()), g.palette()).unwrap(), f);
    }
}
