use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::corpus;
use crate::graph::generators::*;
use crate::graph::Graph;
use crate::rng;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn tame_ok(f: &Graph, cfg: &SearchConfig) -> bool {
    let v = search_tame(f, cfg).unwrap();
    if let Some(c) = &v.certificate {
        assert!(verify_tame_cert_with(f, c, cfg.axioms).unwrap(), "returned tame certificate fails for {:?}", f.edges());
        let g = c.replay().unwrap();
        let map = v.map.as_ref().unwrap();
        for &(a, b) in g.edges() {
            assert!(f.has_edge(map[a], map[b]), "map is not an embedding");
        }
    }
    v.status == Status::Certified
}

fn countable_verdict(f: &Graph) -> Verdict {
    let v = search_countable(f, &cfg()).unwrap();
    if let Some(c) = &v.certificate {
        assert_eq!(verify_countable_cert(f, c), Ok(()), "{:?}", f.edges());
        let g = replay_countable(c).unwrap();
        let map = v.map.as_ref().unwrap();
        let mapped: Vec<(usize, usize)> = {
            let mut e: Vec<_> = g.edges().iter().map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect();
            e.sort_unstable();
            e
        };
        assert_eq!(mapped, f.edges(), "map is not an isomorphism");
    }
    v
}

#[test]
fn cycles_are_tame() {
    for l in 3..=12 {
        assert!(tame_ok(&cycle(l), &cfg()), "C{l}");
    }
}

#[test]
fn k23_is_not_certified_tame() {
    assert!(!tame_ok(&complete_bipartite(2, 3), &cfg()));
}

#[test]
fn subdivided_k4_needs_the_axiom() {
    let f = subdivision(&complete(4));
    assert!(tame_ok(&f, &cfg()));
    let bare = SearchConfig { axioms: false, ..cfg() };
    assert!(!tame_ok(&f, &bare));
    // the axiom also serves as a base for larger graphs
    let g = f.with_isolated(2).with_edges([(0, 10), (10, 11)]).unwrap();
    assert!(tame_ok(&g, &cfg()));
}

#[test]
fn tame_sequence_is_tame() {
    for k in 1..=5 {
        assert!(tame_ok(&corpus::tame_sequence(k), &cfg()), "step {k}");
    }
}

#[test]
fn cycles_are_countable() {
    for l in 5..=12 {
        assert_eq!(countable_verdict(&cycle(l)).status, Status::Certified, "C{l}");
    }
}

#[test]
fn five_cycle_uses_two_path_connectors() {
    let v = countable_verdict(&cycle(5));
    let Some(CountableCertificate::IslandsBridges { islands, connectors, .. }) = v.certificate else {
        panic!("expected a decomposition");
    };
    let mut sizes: Vec<usize> = islands.iter().map(|i| i.map.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2]);
    assert_eq!(connectors.len(), 2);
    assert!(connectors.iter().all(|c| c.map.len() == 3 && c.ends.len() == 2));
}

#[test]
fn short_cycles_refute() {
    for f in [cycle(3), cycle(4), complete(4), complete_bipartite(2, 3), petersen().with_edges([(0, 2)]).unwrap()] {
        let v = countable_verdict(&f);
        assert_eq!(v.status, Status::RefutedGirth);
        let w = v.witness.unwrap();
        assert!(w.len() <= 4);
        for i in 0..w.len() {
            assert!(f.has_edge(w[i], w[(i + 1) % w.len()]));
        }
    }
}

#[test]
fn trees_are_countable() {
    for t in all_trees(8) {
        let v = countable_verdict(&t);
        assert_eq!(v.status, Status::Certified);
    }
}

#[test]
fn pentagon_constructions_are_countable() {
    for f in [corpus::pentagon_pair(), corpus::pentagon_chain(), corpus::pentagon_pair_bridged()] {
        assert_eq!(countable_verdict(&f).status, Status::Certified, "{:?}", f.edges());
    }
}

#[test]
fn glued_pentagon_pair_is_the_last_tame_graph() {
    let j = crate::RootedPattern::new(corpus::pentagon_pair(), corpus::PENTAGON_PAIR_ENDS).unwrap();
    let g = crate::graph::glue(&j);
    assert_eq!(
        crate::graph::canonical_form(&g, None).unwrap(),
        crate::graph::canonical_form(&corpus::tame_sequence(5), None).unwrap()
    );
}

#[test]
fn disconnected_graphs() {
    let f = cycle(5).disjoint_union(&cycle(6)).disjoint_union(&path(3));
    assert_eq!(countable_verdict(&f).status, Status::Certified);
    assert_eq!(countable_verdict(&Graph::empty(3)).status, Status::Certified);
    assert_eq!(countable_verdict(&Graph::empty(0)).status, Status::Certified);
}

#[test]
fn petersen_stays_unknown_on_a_small_budget() {
    let v = search_countable(&petersen(), &SearchConfig { budget: 2_000, ..cfg() }).unwrap();
    assert_eq!(v.status, Status::Unknown);
    assert!(v.conjectural_flags.two_density.passed());
}

#[test]
fn size_limit() {
    assert!(search_countable(&cycle(33), &cfg()).is_err());
    assert!(search_tame(&cycle(33), &cfg()).is_err());
}

#[test]
fn memo_does_not_change_verdicts() {
    let off = SearchConfig { memo: false, ..cfg() };
    let capped = SearchConfig { memo_cap: Some(3), ..cfg() };
    for f in [cycle(7), corpus::pentagon_pair(), path(6), complete_bipartite(2, 3), subdivision(&complete(4))] {
        for other in [&off, &capped] {
            assert_eq!(search_tame(&f, &cfg()).unwrap().status, search_tame(&f, other).unwrap().status);
            assert_eq!(search_countable(&f, &cfg()).unwrap().status, search_countable(&f, other).unwrap().status);
        }
    }
}

#[test]
fn random_graphs_are_sound() {
    let mut r = rng::stream(3, "certify-soundness");
    for _ in 0..200 {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.4), &mut r);
        let small = SearchConfig { budget: 20_000, ..cfg() };
        let v = search_countable(&g, &small).unwrap();
        if let Some(c) = &v.certificate {
            assert_eq!(verify_countable_cert(&g, c), Ok(()), "{:?}", g.edges());
        }
        assert_eq!(v.status == Status::RefutedGirth, crate::graph::girth(&g).unwrap().at_most(4));
        tame_ok(&g, &small);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pendant_edges_preserve_tame_certificates(seed in any::<u64>(), l in 3usize..9) {
        let mut r = rng::stream(seed, "pendant");
        let mut f = cycle(l);
        for _ in 0..r.gen_range(0..3) {
            let n = f.n();
            let a = r.gen_range(0..n);
            let b = r.gen_range(0..n);
            f = f.with_isolated(2).with_edges([(a, n), (n, n + 1), (n + 1, b)]).unwrap();
        }
        prop_assert!(tame_ok(&f, &cfg()));
        let n = f.n();
        let v = r.gen_range(0..n);
        let g = f.with_isolated(1).with_edges([(v, n)]).unwrap();
        prop_assert!(tame_ok(&g, &cfg()));
    }
}
