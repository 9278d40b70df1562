use countable::graph::predicates::triangles_per_edge;
use countable::graph::{is_c4_free, triangles};
use countable::polarity::{build_polarity, triangle_break, verify_polarity};
use countable::{Error, Graph};

const SUPPORTED: [u32; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];

#[test]
fn small_cases() {
    let p = build_polarity(2).unwrap();
    assert_eq!((p.g0.n(), p.g0.loop_count()), (7, 3));
    assert_eq!((p.loopless.n(), p.loopless.m()), (4, 3));
    assert_eq!(triangles(&p.loopless).len(), 1);
    assert_eq!(p.loopless.isolated().len(), 1);
    let p = build_polarity(3).unwrap();
    assert_eq!((p.g0.n(), p.g0.loop_count()), (13, 4));
    assert!((0..13).all(|v| p.g0.degree(v) == 4));
    assert!(build_polarity(6).is_err());
    assert!(verify_polarity(&build_polarity(2).unwrap()).all_passed());
}

#[test]
fn structure_for_every_supported_field() {
    for q in SUPPORTED {
        let p = build_polarity(q).unwrap();
        let qs = q as usize;
        assert_eq!(p.g0.n(), qs * qs + qs + 1, "q = {q}");
        assert_eq!(p.loopless.n(), qs * qs, "q = {q}");
        assert_eq!(p.g0.loop_count(), qs + 1);
        let degs = p.loopless.degrees();
        // in even characteristic the absolute points are collinear and the
        // pole of that line loses all q + 1 neighbors
        let isolated = degs.iter().filter(|&&d| d == 0).count();
        assert_eq!(isolated, usize::from(q % 2 == 0), "q = {q}");
        assert!(degs.iter().filter(|&&d| d > 0).all(|&d| (qs - 1..=qs + 1).contains(&d)), "q = {q}");
        assert_eq!(degs.iter().sum::<usize>(), 2 * p.loopless.m());
        assert!(p.loopless.max_degree().pow(2) <= 4 * p.loopless.n());
        assert!(is_c4_free(&p.loopless));
        if q <= 13 {
            let r = verify_polarity(&p);
            assert!(r.all_passed(), "q = {q}: {:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }
}

#[test]
fn deleting_an_edge_breaks_the_square_identity() {
    let mut p = build_polarity(5).unwrap();
    let &(a, b) = p.g0.edges().iter().find(|&&(a, b)| a != b).unwrap();
    p.g0 = p.g0.filter_edges(|u, v| (u, v) != (a, b));
    let r = verify_polarity(&p);
    assert!(!r.check("adjacency_square").unwrap().passed);
}

#[test]
fn triangle_break_examples() {
    let t = triangle_break(&Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap(), 5).unwrap();
    assert_eq!(t.m(), 2);
    assert!(t.is_connected());
    let g = build_polarity(11).unwrap().loopless;
    let broken = triangle_break(&g, 42).unwrap();
    assert!(triangles(&broken).is_empty());
    assert_eq!(broken.m() * 3, g.m() * 2);
    assert_eq!(broken, triangle_break(&g, 42).unwrap());
    assert!(matches!(triangle_break(&countable::graph::generators::cycle(5), 0), Err(Error::Precondition(_))));
}

#[test]
fn triangle_break_is_triangle_free_for_many_seeds() {
    for q in [5, 7, 11] {
        let g = build_polarity(q).unwrap().loopless;
        assert!(triangles_per_edge(&g).iter().all(|&t| t == 1));
        for seed in 0..20 {
            assert!(triangles(&triangle_break(&g, seed).unwrap()).is_empty(), "q = {q}, seed {seed}");
        }
    }
}
