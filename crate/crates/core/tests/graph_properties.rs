use std::collections::VecDeque;

use proptest::prelude::*;

use rootline::graphs::{
    girth, sample_sign_invariance, signed_adjacency, verify_sign_invariance, zero_diagonal, Graph, Signing,
};
use rootline::rational::{int, rat, Rational};

/// A random bipartite graph on `a + b` vertices, sides `0..a` and `a..a+b`.
fn bipartite_graph() -> impl Strategy<Value = Graph> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(a, b)| {
        prop::collection::vec(any::<bool>(), a * b).prop_map(move |bits| {
            let edges = (0..a)
                .flat_map(|u| (0..b).map(move |v| (u, a + v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e))
                .collect();
            Graph::new(a + b, edges).unwrap()
        })
    })
}

fn any_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e))
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Shortest cycle through each edge: remove it and find the shortest path
/// between its ends.
fn girth_by_edge_removal(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &(s, t)) in g.edges().iter().enumerate() {
        let mut adj = vec![Vec::new(); g.n()];
        for (j, &(u, v)) in g.edges().iter().enumerate() {
            if i != j {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut dist = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if dist[t] != usize::MAX {
            let c = dist[t] + 1;
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}

fn signing_for(g: &Graph, mask: u64) -> Signing {
    Signing::from_mask(mask, g.edge_count())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn girth_matches_edge_removal(g in any_graph()) {
        prop_assert_eq!(girth(&g), girth_by_edge_removal(&g));
    }

    #[test]
    fn bipartite_spectra_are_symmetric(g in bipartite_graph(), mask in any::<u64>()) {
        let s = signing_for(&g, mask);
        let cp = signed_adjacency(&g, &s, &zero_diagonal(&g)).unwrap().char_poly();
        let n = g.n();
        for i in 0..=n {
            if (n - i) % 2 == 1 {
                prop_assert_eq!(cp.coeff(i), int(0));
            }
        }
        prop_assert!(g.is_bipartite());
    }

    #[test]
    fn switching_a_vertex_keeps_the_spectrum(g in any_graph(), mask in any::<u64>(), v in 0usize..7) {
        let v = v % g.n();
        let s = signing_for(&g, mask);
        let switched: Vec<i8> = g
            .edges()
            .iter()
            .zip(s.signs())
            .map(|(&(a, b), &x)| if a == v || b == v { -x } else { x })
            .collect();
        let d: Vec<Rational> = (0..g.n()).map(|i| rat(i as i64 % 3 - 1, 2)).collect();
        let p = signed_adjacency(&g, &s, &d).unwrap().char_poly();
        let q = signed_adjacency(&g, &Signing::new(switched).unwrap(), &d).unwrap().char_poly();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn traces_below_the_girth_ignore_signs(
        g in any_graph(),
        diag in prop::collection::vec((-3i64..=3, 1i64..=3), 7),
        mask in any::<u64>(),
    ) {
        let d: Vec<Rational> = diag.iter().take(g.n()).map(|&(a, b)| rat(a, b)).collect();
        let k = girth(&g).map_or(g.n() + 1, |c| c - 1);
        prop_assert!(verify_sign_invariance(&g, &d, k).unwrap());
        // the same, by dense matrix powers for one signing
        let plus = signed_adjacency(&g, &Signing::all_positive(g.edge_count()), &d).unwrap();
        let other = signed_adjacency(&g, &signing_for(&g, mask), &d).unwrap();
        for i in 1..=k {
            prop_assert_eq!(plus.pow(i).trace(), other.pow(i).trace());
        }
        prop_assert!(sample_sign_invariance(&g, &d, k, 8, mask).unwrap().holds);
    }

    #[test]
    fn serde_round_trip(g in any_graph(), mask in any::<u64>()) {
        let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);
        let s = signing_for(&g, mask);
        let back: Signing = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }
}
