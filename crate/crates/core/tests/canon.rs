use groupiso::canon::{canonical_form, isomorphic, refine_colors};
use groupiso::encoding::ColoredGraph;
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<u32>, Vec<(u32, u32)>)> {
    (2usize..14).prop_flat_map(|n| {
        let colors = proptest::collection::vec(0u32..3, n);
        let edges = proptest::collection::vec((0..n as u32, 0..n as u32), 0..3 * n);
        (Just(n), colors, edges)
    })
}

fn make(colors: &[u32], edges: &[(u32, u32)]) -> ColoredGraph {
    let mut set: Vec<(u32, u32)> = edges.iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
    set.sort_unstable();
    set.dedup();
    ColoredGraph::from_parts(colors.to_vec(), &set)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_invariant((n, colors, edges) in graph_strategy(), seed in any::<u64>()) {
        let g = make(&colors, &edges);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut pc = vec![0u32; n];
        for v in 0..n {
            pc[perm[v] as usize] = colors[v];
        }
        let pe: Vec<(u32, u32)> = g.edge_list().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect();
        let h = make(&pc, &pe);
        let fg = canonical_form(&g).unwrap();
        let fh = canonical_form(&h).unwrap();
        prop_assert_eq!(fg.encoding(), fh.encoding());
        prop_assert!(isomorphic(&g, &h).unwrap());
        // the labeling realizes the encoding
        let relabeled: Vec<(u32, u32)> = g.edge_list().iter().map(|&(u, v)| {
            let (a, b) = (fg.labeling()[u as usize], fg.labeling()[v as usize]);
            (a.min(b), a.max(b))
        }).collect();
        let mut sorted = relabeled.clone();
        sorted.sort_unstable();
        prop_assert_eq!(fg.to_graph().unwrap().edge_list(), sorted);
    }

    #[test]
    fn refine_colors_respects_input_colors((_n, colors, edges) in graph_strategy()) {
        let g = make(&colors, &edges);
        let c = refine_colors(&g);
        for u in 0..colors.len() {
            for v in 0..colors.len() {
                if c[u] == c[v] {
                    prop_assert_eq!(colors[u], colors[v]);
                }
            }
        }
    }
}

/// Isomorphism of small graphs by trying every permutation.
fn brute_iso(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    let n = a.node_count();
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let eb: std::collections::HashSet<(u32, u32)> = b.edge_list().into_iter().collect();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    fn rec(k: usize, perm: &mut Vec<u32>, a: &ColoredGraph, b: &ColoredGraph, eb: &std::collections::HashSet<(u32, u32)>) -> bool {
        let n = perm.len();
        if k == n {
            return a.edge_list().iter().all(|&(u, v)| {
                let (x, y) = (perm[u as usize], perm[v as usize]);
                eb.contains(&(x.min(y), x.max(y)))
            });
        }
        for i in k..n {
            perm.swap(k, i);
            if a.color(k as u32) == b.color(perm[k]) && rec(k + 1, perm, a, b, eb) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(0, &mut perm, a, b, &eb)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn isomorphic_matches_brute_force(
        c1 in proptest::collection::vec(0u32..2, 6),
        e1 in proptest::collection::vec((0u32..6, 0u32..6), 0..10),
        c2 in proptest::collection::vec(0u32..2, 6),
        e2 in proptest::collection::vec((0u32..6, 0u32..6), 0..10),
    ) {
        let a = make(&c1, &e1);
        let b = make(&c2, &e2);
        prop_assert_eq!(isomorphic(&a, &b).unwrap(), brute_iso(&a, &b));
    }
}

#[test]
fn forms_of_relabeled_petersen_are_equal() {
    let build = |shift: u32| {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let edges: Vec<(u32, u32)> = edges.into_iter().map(|(u, v)| ((u + shift) % 10, (v + shift) % 10)).collect();
        ColoredGraph::from_parts(vec![0; 10], &edges)
    };
    let base = canonical_form(&build(0)).unwrap();
    for s in 1..10 {
        let f = canonical_form(&build(s)).unwrap();
        assert_eq!(f, base);
        assert_eq!(f.digest(), base.digest());
    }
}
