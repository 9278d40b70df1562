use countable::graph::generators::*;
use countable::graph::{canonical_form, girth, glue, is_c4_free, max_codegree, two_density_screen, Girth};
use countable::{rng, Graph, RootedPattern};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Shortest cycle through BFS from every vertex, written independently of
/// the library routine.
fn bfs_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b: usize| b.min(len)));
                }
            }
        }
    }
    best
}

#[test]
fn girth_examples() {
    assert_eq!(girth(&cycle(5)).unwrap(), Girth::Finite(5));
    assert_eq!(girth(&path(7)).unwrap(), Girth::Infinite);
    assert_eq!(girth(&petersen()).unwrap(), Girth::Finite(5));
    assert_eq!(bfs_girth(&petersen()), Some(5));
    assert!(girth(&Graph::with_loops(2, [(0, 0)]).unwrap()).is_err());
}

fn has_four_cycle(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|a| {
        (a + 1..n).any(|b| (0..n).filter(|&x| x != a && x != b && g.has_edge(a, x) && g.has_edge(b, x)).count() >= 2)
    })
}

#[test]
fn c4_freeness_agrees_three_ways() {
    let mut r = rng::stream(1, "c4-agreement");
    for _ in 0..500 {
        let n = r.gen_range(1..=20);
        let g = gnp(n, r.gen_range(0.05..0.5), &mut r);
        let free = is_c4_free(&g);
        assert_eq!(free, max_codegree(&g) <= 1);
        assert_eq!(free, !has_four_cycle(&g));
        // girth decides the question unless a triangle hides a 4-cycle
        match bfs_girth(&g) {
            Some(4) => assert!(!free),
            None => assert!(free),
            Some(l) if l >= 5 => assert!(free),
            _ => {}
        }
    }
    assert!(!is_c4_free(&cycle(4)));
    assert!(is_c4_free(&star(3)));
    assert!(is_c4_free(&countable::polarity::build_polarity(3).unwrap().loopless));
}

#[test]
fn gluing_examples() {
    let c4 = glue(&RootedPattern::new(path(3), [0, 2]).unwrap());
    assert_eq!(canonical_form(&c4, None).unwrap(), canonical_form(&cycle(4), None).unwrap());
    let single = glue(&RootedPattern::new(Graph::empty(1), [0]).unwrap());
    assert_eq!(single.n(), 1);
    assert!(RootedPattern::new(path(2), [0, 1]).is_err());
}

#[test]
fn canonical_forms_separate_and_are_invariant() {
    let library = connected_graphs(5);
    assert!(library.len() >= 30);
    let forms: Vec<_> = library.iter().map(|g| canonical_form(g, None).unwrap()).collect();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            assert_ne!(forms[i], forms[j]);
        }
    }
    let mut r = rng::stream(2, "relabel");
    for (g, form) in library.iter().zip(&forms) {
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut r);
            assert_eq!(&canonical_form(&g.relabel(&perm), None).unwrap(), form);
        }
    }
    assert_ne!(canonical_form(&cycle(5), None).unwrap(), canonical_form(&path(5), None).unwrap());
    assert_ne!(canonical_form(&path(3), Some(&[0, 2])).unwrap(), canonical_form(&path(3), Some(&[1, 2])).unwrap());
    assert!(canonical_form(&cycle(65), None).is_err());
}

#[test]
fn two_density_examples() {
    assert!(!two_density_screen(&complete(3)).passed());
    assert!(two_density_screen(&cycle(5)).passed());
    assert!(two_density_screen(&petersen()).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn glued_copies_restrict_to_the_pattern(seed in any::<u64>()) {
        let mut r = rng::stream(seed, "glue");
        let n = r.gen_range(2..8);
        let j = gnp(n, 0.4, &mut r);
        let ends: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        if let Ok(rooted) = RootedPattern::new(j.clone(), ends.clone()) {
            let (glued, second) = countable::graph::glue::glue_with_map(&rooted);
            prop_assert_eq!(glued.m(), 2 * j.m());
            prop_assert_eq!(glued.n(), 2 * n - ends.len());
            prop_assert_eq!(glued.induced(&(0..n).collect::<Vec<_>>()), j.clone());
            let copy = glued.induced(&second);
            prop_assert_eq!(canonical_form(&copy, None).unwrap(), canonical_form(&j, None).unwrap());
        }
    }

    #[test]
    fn two_density_pass_is_monotone(seed in any::<u64>()) {
        let mut r = rng::stream(seed, "density-monotone");
        let n = r.gen_range(3..10);
        let g = gnp(n, 0.35, &mut r);
        if two_density_screen(&g).passed() {
            let drop: Vec<bool> = (0..g.m()).map(|_| r.gen_bool(0.3)).collect();
            let mut i = 0;
            let sub = g.filter_edges(|_, _| { i += 1; !drop[i - 1] });
            prop_assert!(two_density_screen(&sub).passed());
        }
    }
}
