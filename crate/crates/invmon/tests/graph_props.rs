use invmon::graph::{automorphisms, find_root_morphism, is_isomorphic, Edge, InverseGraph, Schedule};
use invmon::words::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn raw_graph(max_vertices: usize, gens: usize) -> impl Strategy<Value = InverseGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let tree = prop::collection::vec((0..n.max(1), 0..gens, any::<bool>()), n - 1);
        let extra = prop::collection::vec((0..n, 0..gens, 0..n), 0..=n);
        (Just(n), tree, extra).prop_map(move |(n, tree, extra)| {
            let mut edges: Vec<Edge> = tree
                .into_iter()
                .enumerate()
                .map(|(i, (p, g, inv))| Edge::along(p % (i + 1), Letter::new(g, inv), i + 1))
                .collect();
            edges.extend(extra.into_iter().map(|(s, g, t)| Edge { source: s, gen: g, target: t }));
            InverseGraph::from_edges(gens, n, 0, edges)
        })
    })
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max).prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

// Every vertex map with image(root) = target, checked edge by edge.
fn brute_force_morphism_exists(src: &InverseGraph, dst: &InverseGraph, target: usize) -> bool {
    let n = src.vertex_count();
    let edges = src.edges();
    let dst_edges: std::collections::HashSet<Edge> = dst.edges().into_iter().collect();
    let mut map = vec![usize::MAX; n];
    map[src.root()] = target;
    fn go(v: usize, map: &mut Vec<usize>, edges: &[Edge], dst: &std::collections::HashSet<Edge>, m: usize, root: usize) -> bool {
        if v == map.len() {
            return edges.iter().all(|e| dst.contains(&Edge { source: map[e.source], gen: e.gen, target: map[e.target] }));
        }
        if v == root {
            return go(v + 1, map, edges, dst, m, root);
        }
        for img in 0..m {
            map[v] = img;
            // prune on edges whose ends are both assigned
            let ok = edges.iter().filter(|e| e.source <= v && e.target <= v && map[e.source] != usize::MAX && map[e.target] != usize::MAX)
                .all(|e| dst.contains(&Edge { source: map[e.source], gen: e.gen, target: map[e.target] }));
            if ok && go(v + 1, map, edges, dst, m, root) {
                return true;
            }
        }
        map[v] = usize::MAX;
        false
    }
    go(0, &mut map, &edges, &dst_edges, dst.vertex_count(), src.root())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fold_schedules_agree(g in raw_graph(40, 3)) {
        let al = Alphabet::new(["a", "b", "c"]).unwrap();
        let f = g.fold_with(Schedule::Fifo);
        let l = g.fold_with(Schedule::Lifo);
        prop_assert!(f.is_bideterministic());
        prop_assert_eq!(f.dump(&al), l.dump(&al));
        prop_assert!(is_isomorphic(&f, &l, true).unwrap());
    }

    #[test]
    fn inverse_pairs_survive_folding(g in raw_graph(20, 2)) {
        let f = g.fold();
        for e in f.edges() {
            prop_assert_eq!(f.step(e.source, Letter::pos(e.gen)).unwrap(), Some(e.target));
            prop_assert_eq!(f.step(e.target, Letter::neg(e.gen)).unwrap(), Some(e.source));
        }
    }

    #[test]
    fn reading_there_and_back(g in raw_graph(20, 2), w in word(2, 8)) {
        let f = g.fold();
        for v in 0..f.vertex_count() {
            if f.read_path(v, &w).unwrap().is_some() {
                prop_assert_eq!(f.read_path(v, &w.concat(&w.invert())).unwrap(), Some(v));
            }
        }
    }

    #[test]
    fn automorphisms_verify(g in raw_graph(16, 2)) {
        let f = g.fold();
        let aut = automorphisms(&f, 1000).unwrap();
        for m in aut.elements() {
            prop_assert!(m.verify(&f, &f));
            prop_assert!(m.is_bijective(f.vertex_count()));
        }
        prop_assert!(aut.is_group());
    }

    #[test]
    fn root_morphisms_match_brute_force(a in raw_graph(8, 2), b in raw_graph(8, 2)) {
        let (src, dst) = (a.fold(), b.fold());
        for t in 0..dst.vertex_count() {
            let found = find_root_morphism(&src, &dst, t).unwrap();
            if let Some(m) = &found {
                prop_assert!(m.verify(&src, &dst));
            }
            prop_assert_eq!(found.is_some(), brute_force_morphism_exists(&src, &dst, t));
        }
    }
}
