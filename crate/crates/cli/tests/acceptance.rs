//! One line per acceptance criterion. Criteria listed in
//! `KNOWN_FAILURES` are reported but do not fail the test; see the
//! decisions ledger for each.

use std::path::Path;
use std::time::{Duration, Instant};

use countable::certify::{refute_tame_empirical, Status};
use countable::corpus::{self, Kind};
use countable::graph::generators::{complete, complete_bipartite, connected_graphs, cycle, gnp, path, subdivision};
use countable::graph::spectrum::adjacency_spectrum;
use countable::graph::{glue, Graph, RootedPattern};
use countable::harness::{
    c4_counterexample, constant_host, counting_experiment, discrepancy_spectral, trim_with, triangle_counterexample,
    truncation_check,
};
use countable::homcount::{hom_brute, hom_weighted, Budget, Mode, ScaledHost, Value, VertexWeights};
use countable::polarity::{build_polarity, verify_polarity};
use countable::{rng, Surd};
use countable_cli::corpus_dir;
use countable_cli::files::Session;
use num_rational::BigRational;
use rand::Rng;

/// Criteria expected to fail, with the reason recorded in the ledger.
const KNOWN_FAILURES: &[usize] = &[5, 7];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn exact(v: &Value) -> Surd {
    v.exact().cloned().expect("exact mode")
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
        let p = build_polarity(q).unwrap();
        let r = verify_polarity(&p);
        let loops = p.g0.loop_count() == q as usize + 1;
        let order = p.loopless.n() == (q * q) as usize;
        if !(r.all_passed() && loops && order) {
            bad.push(q);
        }
    }
    outcome(bad.is_empty(), format!("failing q: {bad:?}"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13] {
        let p = build_polarity(q).unwrap();
        let ev = adjacency_spectrum(&p.g0).unwrap();
        let (top, rest) = ev.split_last().unwrap();
        worst = worst.max((top - (q as f64 + 1.0)).abs());
        let rq = (q as f64).sqrt();
        for &x in rest {
            worst = worst.max((x.abs() - rq).abs());
        }
    }
    let d5 = discrepancy_spectral(&build_polarity(5).unwrap().loopless).unwrap().upper;
    let d23 = discrepancy_spectral(&build_polarity(23).unwrap().loopless).unwrap().upper;
    let ratio = d5 / d23;
    let ideal = (529.0f64 / 25.0).powf(0.25);
    outcome(
        worst <= 1e-9 && (1.3..=2.2).contains(&ratio),
        format!("max eigenvalue error {worst:.2e}; δ_up(5)/δ_up(23) = {ratio:.4} (n^-1/4 scaling gives {ideal:.4})"),
    )
}

fn criterion_3() -> Outcome {
    let patterns: Vec<Graph> = connected_graphs(5);
    let mut r = rng::stream(3, "acceptance-counting");
    let mut mismatches = 0;
    let mut identities = 0;
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let g = gnp(n, r.gen_range(0.1..0.7), &mut r);
        let host = ScaledHost::sparse_unchecked(g.clone(), 1.0).unwrap();
        for f in &patterns {
            let sets: Vec<Vec<usize>> = (0..f.n()).map(|_| (0..n).filter(|_| r.gen_bool(0.7)).collect()).collect();
            let w = VertexWeights::indicators(n, &sets).unwrap();
            let dp = exact(&hom_weighted(f, &host, &w, Mode::Exact).unwrap().raw);
            let allowed: Vec<Vec<bool>> = sets.iter().map(|s| (0..n).map(|x| s.contains(&x)).collect()).collect();
            let brute = hom_brute(f, &g, Some(&allowed)).unwrap();
            if dp != Surd::integer(brute as i128) {
                mismatches += 1;
            }
        }
        let count = |f: &Graph| hom_brute(f, &g, None).unwrap();
        let deg3: u128 = g.degrees().iter().map(|&d| (d as u128).pow(3)).sum();
        let ones = |f: &Graph| exact(&hom_weighted(f, &host, &VertexWeights::ones(f.n(), n), Mode::Exact).unwrap().raw);
        let k13 = complete_bipartite(1, 3);
        let checks = [
            count(&path(1)) == n as u128,
            ones(&path(1)) == Surd::integer(n as i128),
            count(&path(2)) == 2 * g.m() as u128,
            ones(&path(2)) == Surd::integer(2 * g.m() as i128),
            count(&k13) == deg3,
            ones(&k13) == Surd::integer(deg3 as i128),
        ];
        identities += checks.iter().filter(|&&c| !c).count();
    }
    outcome(
        mismatches == 0 && identities == 0 && patterns.len() == 31,
        format!("{} classes x 100 hosts: {mismatches} mismatches, {identities} identity failures", patterns.len()),
    )
}

fn criterion_4() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let s = corpus_dir::run(&dir, countable::certify::DEFAULT_BUDGET, None, &mut Session::default()).unwrap();
    let get = |name: &str| s.entries.iter().find(|e| e.name == name).map(|e| e.got);
    let trees = s.entries.iter().filter(|e| e.name.starts_with("tree-")).count();
    let coverage = [
        get("C5") == Some(Status::Certified),
        get("C12") == Some(Status::Certified),
        get("C3-tame") == Some(Status::Certified),
        get("tame-sequence-5") == Some(Status::Certified),
        get("K4-subdivided-tame") == Some(Status::Certified),
        get("K4-subdivided-tame-no-axioms") == Some(Status::Unknown),
        get("C4") == Some(Status::RefutedGirth),
        get("K4") == Some(Status::RefutedGirth),
        get("petersen") == Some(Status::Unknown),
        get("dodecahedron") == Some(Status::Unknown),
        trees == 200,
        s.entries.iter().filter(|e| e.kind == Kind::Tame).count() >= 17,
    ];
    outcome(
        s.all_passed() && coverage.iter().all(|&c| c),
        format!("{} of {} entries pass ({} trees); failed: {:?}", s.passed, s.entries.len(), trees, s.failed),
    )
}

fn criterion_5() -> Outcome {
    let qs = [5u32, 7, 11, 13, 17, 19, 23];
    let budget = Budget::default();
    let slope = |f: &Graph| refute_tame_empirical(f, &qs, 0.2, &budget).unwrap().slope;
    let k23 = slope(&complete_bipartite(2, 3));
    let k5s = slope(&subdivision(&complete(5)));
    let c5 = slope(&cycle(5));
    let ok = (k23 - 0.5).abs() <= 0.15 && (k5s - 1.0).abs() <= 0.3 && c5.abs() <= 0.15;
    outcome(ok, format!("slopes: K2,3 {k23:.4} (0.5±0.15), K'5 {k5s:.4} (1.0±0.3), C5 {c5:.4} (|·|≤0.15)"))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for q in [5u32, 7, 11] {
        let r = c4_counterexample(q).unwrap();
        let n = (q * q) as i64;
        let quarter = n / 4;
        let want = Surd::rational(BigRational::new(quarter.pow(4).into(), n.pow(4).into()));
        if !(r.sparse.is_zero() && r.dense == want) {
            bad.push(format!("c4 q={q}"));
        }
    }
    let eight_27 = Surd::ratio(8, 27);
    for q in [7u32, 11] {
        for seed in 0..20 {
            let r = triangle_counterexample(q, seed, 1).unwrap();
            let brute = hom_brute(&complete(3), &triangle_free_graph(q, seed), None).unwrap();
            if !(r.sparse.is_zero() && brute == 0 && r.dense == eight_27 && r.edges_after * 3 == r.edges_before * 2) {
                bad.push(format!("triangle q={q} seed={seed}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("failing: {bad:?}"))
}

fn triangle_free_graph(q: u32, seed: u64) -> Graph {
    countable::polarity::triangle_break(&build_polarity(q).unwrap().loopless, seed).unwrap()
}

fn criterion_7() -> Outcome {
    let mut mins = Vec::new();
    for q in [5u32, 7, 11, 13] {
        let g = build_polarity(q).unwrap().loopless;
        let h = constant_host(&g).unwrap();
        let r = counting_experiment(&cycle(5), &g, &h, 0.5, 100, 7, Mode::Float).unwrap();
        mins.push(r.min_gap);
    }
    let monotone = mins.windows(2).all(|w| w[1] >= w[0]);
    let g = build_polarity(7).unwrap().loopless;
    let h = constant_host(&g).unwrap();
    let edgeless = counting_experiment(&Graph::empty(3), &g, &h, 0.5, 100, 7, Mode::Exact).unwrap();
    let zero = edgeless.trials.iter().all(|t| t.gap.exact().is_some_and(Surd::is_zero));
    outcome(monotone && zero, format!("min gaps over q = 5, 7, 11, 13: {mins:.6?}; edgeless gaps all exactly 0: {zero}"))
}

fn criterion_8() -> Outcome {
    let g = build_polarity(3).unwrap().loopless;
    let mut lines = Vec::new();
    let mut ok = true;
    let two_path = RootedPattern::new(path(3), [0, 2]).unwrap();
    let pair = RootedPattern::new(corpus::pentagon_pair(), corpus::PENTAGON_PAIR_ENDS).unwrap();
    for (name, j) in [("2-path", &two_path), ("pentagon pair", &pair)] {
        for delta in [0.05, 0.1, 0.5] {
            let r = truncation_check(j, &g, delta, 0.5, true).unwrap();
            // independent recomputation of t(J ∨ J) from the raw count
            let glued = glue(j);
            let count = hom_brute(&glued, &g, None).unwrap();
            let n = g.n() as i64;
            let scale = Surd::rational(BigRational::new(1.into(), 4.into())).mul(&Surd::integer(n as i128));
            let t = Surd::integer(count as i128)
                .mul(&scale.pow(glued.m() as u32 / 2))
                .mul(&if glued.m() % 2 == 1 { Surd::ratio(1, 2).mul(&Surd::sqrt_of(n as u64)) } else { Surd::one() })
                .scale(&BigRational::new(1.into(), num_bigint::BigInt::from(n).pow(glued.n() as u32)));
            let holds = r.tail_within_markov && r.gluing_identity && r.integral_of_square == t;
            ok &= holds;
            lines.push(format!("{name} δ={delta}: {}", if holds { "ok" } else { "broken" }));
        }
    }
    outcome(ok, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let g = build_polarity(7).unwrap().loopless;
    let n = g.n();
    let planted = g.with_isolated(1).with_edges((0..n).map(|v| (v, n))).unwrap();
    let r = trim_with(&planted, &constant_host(&planted).unwrap(), 1000, 9);
    let removed_ok = r.removed == vec![n] && r.trimmed.edges() == g.edges() && r.trimmed.degree(n) == 0;
    outcome(
        removed_ok && r.chain_holds && r.complement_bound_holds && r.pairs_checked == 1001,
        format!("removed {:?}; chain holds on {} pairs: {}", r.removed, r.pairs_checked, r.chain_holds),
    )
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome, u64); 9] = [
        (1, "polarity exactness", criterion_1, 30),
        (2, "spectral quasirandomness", criterion_2, 60),
        (3, "counting oracle equivalence", criterion_3, 300),
        (4, "certificate corpus", criterion_4, 600),
        (5, "non-tameness growth", criterion_5, 600),
        (6, "counterexample exactness", criterion_6, 120),
        (7, "counting trend", criterion_7, 900),
        (8, "truncation and gluing identities", criterion_8, 120),
        (9, "trimming", criterion_9, 60),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let passed = o.passed && in_time;
        println!(
            "[{}] criterion {id} {name}: {} ({:.1}s, limit {limit}s)",
            if passed { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
        if !passed && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
