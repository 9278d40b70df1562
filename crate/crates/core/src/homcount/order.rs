//! Vertex elimination orders for the counting DP.
//!
//! Eliminating a vertex creates a table over its current neighbors, so the
//! width of an order (largest neighbor set met during elimination) fixes
//! the DP cost at `O(n^(width + 1))`. Up to [`EXACT_LIMIT`] eliminable
//! vertices the order is width-optimal by a subset DP; above that it is
//! the greedy min-fill order.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Largest number of eliminable vertices handled by the exact search.
pub const EXACT_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
    pub width: usize,
    pub exact: bool,
}

/// Order eliminating every vertex of `f`.
pub fn elimination_order(f: &Graph) -> EliminationOrder {
    elimination_order_with_tail(f, &vec![true; f.n()])
}

/// Order over the vertices with `eliminable[v]`; the others stay to the
/// end (they are the free variables of a profile) but still count as
/// neighbors.
pub fn elimination_order_with_tail(f: &Graph, eliminable: &[bool]) -> EliminationOrder {
    let elim: Vec<usize> = (0..f.n()).filter(|&v| eliminable[v]).collect();
    if elim.is_empty() {
        return EliminationOrder { order: Vec::new(), width: 0, exact: true };
    }
    if elim.len() <= EXACT_LIMIT {
        exact_order(f, &elim)
    } else {
        min_fill_order(f, eliminable)
    }
}

/// Width of a given order (neighbors at elimination time, maximized).
pub fn order_width(f: &Graph, order: &[usize]) -> usize {
    let mut adj: Vec<Vec<bool>> = (0..f.n())
        .map(|v| (0..f.n()).map(|w| w != v && f.has_edge(v, w)).collect())
        .collect();
    let mut gone = vec![false; f.n()];
    let mut width = 0;
    for &v in order {
        let nb: Vec<usize> = (0..f.n()).filter(|&w| !gone[w] && adj[v][w]).collect();
        width = width.max(nb.len());
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        gone[v] = true;
    }
    width
}

fn exact_order(f: &Graph, elim: &[usize]) -> EliminationOrder {
    let k = elim.len();
    let n = f.n();
    let full = (1usize << k) - 1;
    // q_size(s, i): vertices outside s ∪ {elim[i]} reachable from elim[i]
    // through vertices of s.
    let q_size = |s: usize, i: usize| -> usize {
        let in_s = |w: usize| elim.iter().position(|&e| e == w).is_some_and(|j| s >> j & 1 == 1);
        let start = elim[i];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 0;
        while let Some(x) = stack.pop() {
            for &y in f.neighbors(x) {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                if in_s(y) {
                    stack.push(y);
                } else {
                    count += 1;
                }
            }
        }
        count
    };
    let mut best = vec![usize::MAX; 1 << k];
    let mut choice = vec![0usize; 1 << k];
    best[0] = 0;
    for s in 1..=full {
        for i in 0..k {
            if s >> i & 1 == 0 {
                continue;
            }
            let rest = s & !(1 << i);
            let w = best[rest].max(q_size(rest, i));
            if w < best[s] {
                best[s] = w;
                choice[s] = i;
            }
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut s = full;
    while s != 0 {
        let i = choice[s];
        order.push(elim[i]);
        s &= !(1 << i);
    }
    order.reverse();
    EliminationOrder { order, width: best[full], exact: true }
}

fn min_fill_order(f: &Graph, eliminable: &[bool]) -> EliminationOrder {
    let n = f.n();
    let mut adj: Vec<Vec<bool>> =
        (0..n).map(|v| (0..n).map(|w| w != v && f.has_edge(v, w)).collect()).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::new();
    let mut width = 0;
    let remaining = |gone: &[bool]| (0..n).filter(|&v| eliminable[v] && !gone[v]).count();
    while remaining(&gone) > 0 {
        let mut pick: Option<(usize, usize, usize)> = None; // (fill, degree, v)
        for v in (0..n).filter(|&v| eliminable[v] && !gone[v]) {
            let nb: Vec<usize> = (0..n).filter(|&w| !gone[w] && adj[v][w]).collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !adj[a][b] {
                        fill += 1;
                    }
                }
            }
            let key = (fill, nb.len(), v);
            if pick.map_or(true, |p| key < p) {
                pick = Some(key);
            }
        }
        let (_, deg, v) = pick.expect("some vertex remains");
        let nb: Vec<usize> = (0..n).filter(|&w| !gone[w] && adj[v][w]).collect();
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
        width = width.max(deg);
        gone[v] = true;
        order.push(v);
    }
    EliminationOrder { order, width, exact: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn small_widths() {
        assert_eq!(elimination_order(&path(6)).width, 1);
        assert_eq!(elimination_order(&star(5)).width, 1);
        assert_eq!(elimination_order(&cycle(5)).width, 2);
        assert_eq!(elimination_order(&complete(5)).width, 4);
        assert_eq!(elimination_order(&Graph::empty(3)).width, 0);
    }

    #[test]
    fn reported_width_matches_order() {
        for g in [petersen(), complete_bipartite(3, 4), subdivision(&complete(4))] {
            let o = elimination_order(&g);
            assert_eq!(order_width(&g, &o.order), o.width);
            let mut sorted = o.order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tail_vertices_are_kept() {
        let c = cycle(6);
        let mut elim = vec![true; 6];
        elim[0] = false;
        elim[3] = false;
        let o = elimination_order_with_tail(&c, &elim);
        assert_eq!(o.order.len(), 4);
        assert!(!o.order.contains(&0) && !o.order.contains(&3));
        assert_eq!(o.width, 2);
    }

    #[test]
    fn min_fill_on_large_patterns() {
        let o = elimination_order(&cycle(20));
        assert!(!o.exact);
        assert_eq!(o.width, 2);
        assert_eq!(elimination_order(&dodecahedron()).order.len(), 20);
    }
}
