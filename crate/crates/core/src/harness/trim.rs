//! Removing high-degree vertices, with the inequalities that bound the
//! damage checked pair by pair.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::homcount::WeightedHost;
use crate::rng;
use crate::surd::Surd;

pub const DEFAULT_PAIRS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `|√n e_{G'}(A,B) - e_H(A,B)|`.
    pub lhs: Surd,
    /// `|√n e_G(A∩S,B∩S) - e_H(A∩S,B∩S)| + (|A∖S| + |B∖S|) n`.
    pub rhs: Surd,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrimReport {
    /// Vertices of degree at most `2√n`.
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
    pub trimmed: Graph,
    pub pairs_checked: usize,
    pub chain_holds: bool,
    /// The pair `(S̄, V)`, always checked.
    pub complement_pair: PairCheck,
    /// `|e_G(S̄,V)/n^{3/2} - e_H(S̄,V)/n²|`.
    pub delta_complement: Surd,
    /// `|S̄| ≤ δ n` with `δ` the deviation above.
    pub complement_bound_holds: bool,
    pub seed: u64,
}

struct Exact<'a> {
    g: &'a Graph,
    h: Vec<BigRational>,
    n: usize,
    root_n: Surd,
}

impl Exact<'_> {
    fn e_h(&self, a: &[bool], b: &[bool]) -> BigRational {
        let mut s = BigRational::from_integer(0.into());
        for x in (0..self.n).filter(|&x| a[x]) {
            for y in (0..self.n).filter(|&y| b[y]) {
                s += &self.h[x * self.n + y];
            }
        }
        s
    }

    /// `√n e(A,B) - e_H(A,B)` for the graph `g`.
    fn dev(&self, g: &Graph, a: &[bool], b: &[bool]) -> Surd {
        let eg = BigRational::from_integer(BigInt::from(g.bilinear_count(a, b)));
        self.root_n.scale(&eg).sub(&Surd::rational(self.e_h(a, b)))
    }
}

fn restrict(a: &[bool], s: &[bool]) -> Vec<bool> {
    a.iter().zip(s).map(|(&x, &y)| x && y).collect()
}

fn list(a: &[bool]) -> Vec<usize> {
    (0..a.len()).filter(|&v| a[v]).collect()
}

fn check_pair(e: &Exact, trimmed: &Graph, s: &[bool], a: &[bool], b: &[bool]) -> PairCheck {
    let lhs = e.dev(trimmed, a, b).abs();
    let outside = a.iter().zip(s).filter(|(&x, &y)| x && !y).count() + b.iter().zip(s).filter(|(&x, &y)| x && !y).count();
    let slack = Surd::integer((outside * e.n) as i128);
    let rhs = e.dev(e.g, &restrict(a, s), &restrict(b, s)).abs().add(&slack);
    let holds = lhs <= rhs;
    PairCheck { a: list(a), b: list(b), lhs, rhs, holds }
}

/// The vertices of degree at most `2√n`.
pub fn low_degree_set(g: &Graph) -> Vec<bool> {
    let n = g.n();
    (0..n).map(|v| g.degree(v) * g.degree(v) <= 4 * n).collect()
}

pub fn trim(g: &Graph, h: &WeightedHost) -> TrimReport {
    trim_with(g, h, DEFAULT_PAIRS, 0)
}

/// Keeps the edges inside `S = {v : deg v ≤ 2√n}` and checks the
/// inequality chain on `pairs` random pairs plus `(S̄, V)`.
pub fn trim_with(g: &Graph, h: &WeightedHost, pairs: usize, seed: u64) -> TrimReport {
    let n = g.n();
    assert_eq!(h.n(), n, "host and graph sizes differ");
    let s = low_degree_set(g);
    let trimmed = g.filter_edges(|u, v| s[u] && s[v]);
    let e = Exact {
        g,
        h: h.values().iter().map(|&x| BigRational::from_float(x).expect("finite")).collect(),
        n,
        root_n: Surd::sqrt_of(n as u64),
    };
    let mut r = rng::stream(seed, "trim-pairs");
    let mut chain_holds = true;
    for _ in 0..pairs {
        let a: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
        let b: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
        chain_holds &= check_pair(&e, &trimmed, &s, &a, &b).holds;
    }
    let sbar: Vec<bool> = s.iter().map(|&x| !x).collect();
    let all = vec![true; n];
    let complement_pair = check_pair(&e, &trimmed, &s, &sbar, &all);
    chain_holds &= complement_pair.holds;
    let delta = if n == 0 {
        Surd::zero()
    } else {
        // |√n e_G - e_H| / n²
        e.dev(g, &sbar, &all).abs().scale(&BigRational::new(1.into(), BigInt::from(n) * BigInt::from(n)))
    };
    let removed = list(&sbar);
    let bound = delta.scale(&BigRational::from_integer(BigInt::from(n)));
    let complement_bound_holds = Surd::integer(removed.len() as i128) <= bound;
    TrimReport {
        kept: list(&s),
        removed,
        trimmed,
        pairs_checked: pairs + 1,
        chain_holds,
        complement_pair,
        delta_complement: delta,
        complement_bound_holds,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::harness::host::constant_host;
    use crate::polarity::build_polarity;

    #[test]
    fn polarity_graphs_are_untouched() {
        let g = build_polarity(5).unwrap().loopless;
        let r = trim_with(&g, &constant_host(&g).unwrap(), 50, 1);
        assert!(r.removed.is_empty());
        assert_eq!(r.trimmed, g);
        assert!(r.chain_holds);
    }

    #[test]
    fn planted_universal_vertex_is_removed() {
        let g = build_polarity(5).unwrap().loopless;
        let n = g.n();
        let planted = g.with_isolated(1).with_edges((0..n).map(|v| (v, n))).unwrap();
        let r = trim_with(&planted, &constant_host(&planted).unwrap(), 100, 3);
        assert_eq!(r.removed, vec![n]);
        assert_eq!(r.trimmed.edges(), g.edges());
        assert!(r.chain_holds && r.complement_bound_holds);
    }

    #[test]
    fn dense_random_graph_loses_its_high_degrees() {
        let mut rng = crate::rng::stream(2, "trim-gnp");
        let g = gnp(50, 0.5, &mut rng);
        let r = trim_with(&g, &constant_host(&g).unwrap(), 20, 0);
        let threshold = 2.0 * 50f64.sqrt();
        for v in 0..50 {
            assert_eq!(r.removed.contains(&v), g.degree(v) as f64 > threshold);
        }
        assert!(r.chain_holds);
    }

    #[test]
    fn trimming_is_idempotent() {
        let g = star(30);
        let h = constant_host(&g).unwrap();
        let once = trim_with(&g, &h, 5, 0).trimmed;
        let twice = trim_with(&once, &h, 5, 0).trimmed;
        assert_eq!(once, twice);
    }
}
