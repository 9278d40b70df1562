use countable::graph::generators::*;
use countable::homcount::order::elimination_order;
use countable::homcount::profile::truncate_profile;
use countable::homcount::*;
use countable::polarity::build_polarity;
use countable::{rng, Surd};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn raw(f: &countable::Graph, g: &countable::Graph) -> Surd {
    let host = ScaledHost::sparse_unchecked(g.clone(), 1.0).unwrap();
    hom_weighted(f, &host, &VertexWeights::ones(f.n(), g.n()), Mode::Exact).unwrap().raw.exact().cloned().unwrap()
}

#[test]
fn brute_force_examples() {
    assert_eq!(hom_brute(&cycle(5), &cycle(5), None).unwrap(), 10);
    let g = petersen();
    assert_eq!(hom_brute(&path(1), &g, None).unwrap(), 10);
    assert_eq!(hom_brute(&star(3), &g, None).unwrap(), 10 * 27);
    assert_eq!(raw(&star(3), &g), Surd::integer(270));
}

#[test]
fn elimination_widths() {
    let mut r = rng::stream(4, "tree-width");
    for n in 2..12 {
        assert_eq!(elimination_order(&random_recursive_tree(n, &mut r)).width, 1);
    }
    assert_eq!(elimination_order(&cycle(5)).width, 2);
    assert_eq!(elimination_order(&petersen()).width, 4);
}

#[test]
fn density_examples() {
    let g = build_polarity(5).unwrap().loopless;
    let n = g.n();
    let sparse = ScaledHost::sparse(g.clone(), 0.5).unwrap();
    let t = hom_weighted(&countable::Graph::empty(3), &sparse, &VertexWeights::ones(3, n), Mode::Exact).unwrap();
    assert_eq!(t.value.exact().unwrap(), &Surd::one());
    let edge = hom_weighted(&path(2), &sparse, &VertexWeights::ones(2, n), Mode::Exact).unwrap();
    // c · 2|E| / n^{3/2} with n = 25
    let want = Surd::rational(BigRational::new(BigInt::from(g.m()), BigInt::from(125)));
    assert_eq!(edge.value.exact().unwrap(), &want);
    for q in [3, 5] {
        let g = build_polarity(q).unwrap().loopless;
        let n = g.n() as i64;
        let host = ScaledHost::sparse(g.clone(), 0.5).unwrap();
        let t = hom_weighted(&cycle(5), &host, &VertexWeights::ones(5, g.n()), Mode::Exact).unwrap();
        let brute = hom_brute(&cycle(5), &g, None).unwrap();
        let scale = Surd::sqrt_of(n as u64).scale(&BigRational::new(1.into(), 2.into())).pow(5);
        let expect = Surd::integer(brute as i128).mul(&scale).scale(&BigRational::new(1.into(), BigInt::from(n).pow(5)));
        assert_eq!(t.value.exact().unwrap(), &expect);
    }
}

#[test]
fn profile_examples() {
    let g = build_polarity(3).unwrap().loopless;
    let n = g.n();
    let host = ScaledHost::sparse(g.clone(), 0.5).unwrap();
    let p = partial_profile(&path(3), &[0, 2], &host, &VertexWeights::ones(3, n), Mode::Exact).unwrap();
    for x in 0..n {
        for y in 0..n {
            // c² n · codeg / n
            let want = Surd::ratio(g.codegree(x, y) as i64, 4);
            assert_eq!(p.get(&[x, y]).exact().unwrap(), &want);
        }
    }
    let whole = partial_profile(&cycle(5), &[], &host, &VertexWeights::ones(5, n), Mode::Exact).unwrap();
    let t = hom_weighted(&cycle(5), &host, &VertexWeights::ones(5, n), Mode::Exact).unwrap();
    assert_eq!(whole.get(&[]), t.value);
    let p = partial_profile(&path(2), &[0], &host, &VertexWeights::ones(2, n), Mode::Float).unwrap();
    for x in 0..n {
        let want = 0.5 * g.degree(x) as f64 / (n as f64).sqrt();
        assert!((p.get(&[x]).to_f64() - want).abs() < 1e-12);
    }
    let cut = truncate_profile(&p, f64::INFINITY).unwrap();
    assert_eq!(cut, p);
    let zero = truncate_profile(&p, 1e-9).unwrap();
    assert!(zero.to_f64().iter().all(|&v| v == 0.0));
}

#[test]
fn random_indicator_sets_match_brute_force() {
    let mut r = rng::stream(6, "indicator-oracle");
    for f in connected_graphs(4) {
        for _ in 0..10 {
            let n = r.gen_range(1..=10);
            let g = gnp(n, 0.4, &mut r);
            let sets: Vec<Vec<usize>> = (0..f.n()).map(|_| (0..n).filter(|_| r.gen_bool(0.6)).collect()).collect();
            let host = ScaledHost::sparse_unchecked(g.clone(), 1.0).unwrap();
            let dp = hom_weighted(&f, &host, &VertexWeights::indicators(n, &sets).unwrap(), Mode::Exact).unwrap();
            let allowed: Vec<Vec<bool>> = sets.iter().map(|s| (0..n).map(|x| s.contains(&x)).collect()).collect();
            assert_eq!(dp.raw.exact().unwrap(), &Surd::integer(hom_brute(&f, &g, Some(&allowed)).unwrap() as i128));
        }
    }
}
