//! Named graphs and random graph generators.

use std::collections::HashSet;

use rand::Rng;

use super::{canonical_form, Graph};

/// Path on `k` vertices `0 - 1 - ... - (k-1)`.
pub fn path(k: usize) -> Graph {
    Graph::new(k, (1..k).map(|i| (i - 1, i))).expect("valid")
}

/// Cycle on `l >= 3` vertices.
pub fn cycle(l: usize) -> Graph {
    assert!(l >= 3, "cycles need at least 3 vertices");
    Graph::new(l, (0..l).map(|i| (i, (i + 1) % l))).expect("valid")
}

pub fn complete(k: usize) -> Graph {
    Graph::new(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))).expect("valid")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("valid")
}

/// Star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, e).expect("valid")
}

/// The 20-vertex dodecahedral graph.
pub fn dodecahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        // outer pentagon, spokes, middle 10-cycle, inner pentagon
        e.push((i, (i + 1) % 5));
        e.push((i, 5 + 2 * i));
        e.push((15 + i, 15 + (i + 1) % 5));
        e.push((6 + 2 * i, 15 + i));
    }
    for j in 0..10 {
        e.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::new(20, e).expect("valid")
}

/// 1-subdivision: every edge `uv` becomes `u - s - v` with a new vertex `s`.
/// Original vertices keep their labels; subdivision vertices follow in edge
/// order.
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.n();
    let mut e = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        e.push((u, n + i));
        e.push((n + i, v));
    }
    Graph::new(n + g.m(), e).expect("valid")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    Graph::new(n, e).expect("valid")
}

/// Uniformly random labeled tree on `n` vertices (random Prüfer-free
/// attachment: each new vertex picks a uniform earlier parent).
pub fn random_recursive_tree(n: usize, rng: &mut impl Rng) -> Graph {
    Graph::new(n, (1..n).map(|i| (rng.gen_range(0..i), i))).expect("valid")
}

/// One representative of every unlabeled tree with `1..=max_n` vertices,
/// grown by leaf addition and deduplicated by canonical form.
pub fn all_trees(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut layer = vec![Graph::empty(1)];
    for size in 1..=max_n {
        out.extend(layer.iter().cloned());
        if size == max_n {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for v in 0..t.n() {
                let grown = t.with_isolated(1).with_edges([(v, t.n())]).expect("valid");
                if seen.insert(canonical_form(&grown, None).expect("small")) {
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    out
}

/// One representative of every connected unlabeled graph with
/// `1..=max_n` vertices (`max_n <= 7`), by exhaustive edge-subset
/// enumeration.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 7, "exhaustive enumeration is limited to 7 vertices");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen = HashSet::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let g = Graph::new(
                n,
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            )
            .expect("valid");
            if g.is_connected() && seen.insert(canonical_form(&g, None).expect("small")) {
                out.push(g);
            }
        }
    }
    out
}
