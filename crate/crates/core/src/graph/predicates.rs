use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Girth::Finite(g) if g <= k)
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Length of a shortest cycle, by BFS from every vertex.
pub fn girth(g: &Graph) -> Result<Girth> {
    Ok(shortest_cycle(g)?.map_or(Girth::Infinite, |c| Girth::Finite(c.len())))
}

/// A shortest cycle as a vertex sequence, or `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    if let Some(&(v, _)) = g.edges().iter().find(|(u, v)| u == v) {
        return Err(Error::LoopNotAllowed(v));
    }
    let n = g.n();
    let mut best: Option<(usize, usize, usize, usize)> = None; // (len, root, x, y)
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] + 1 >= b.0) {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if best.map_or(true, |b| len < b.0) {
                        best = Some((len, s, x, y));
                    }
                }
            }
        }
    }
    let Some((_, s, x, y)) = best else { return Ok(None) };
    // Rebuild the two BFS branches from s.
    dist.fill(usize::MAX);
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        for &b in g.neighbors(a) {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    let walk = |mut v: usize| {
        let mut p = vec![v];
        while v != s {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let mut left = walk(x);
    let right = walk(y);
    // Trim the shared tail so the cycle is simple.
    let mut shared = 0;
    while shared < left.len().min(right.len())
        && left[left.len() - 1 - shared] == right[right.len() - 1 - shared]
    {
        shared += 1;
    }
    left.truncate(left.len() - shared + 1);
    let mut cycle = left;
    cycle.extend(right[..right.len() - shared].iter().rev());
    Ok(Some(cycle))
}

/// Largest number of common neighbors over distinct vertex pairs
/// (loops ignored).
pub fn max_codegree(g: &Graph) -> usize {
    let h = g.without_loops();
    let rows = h.rows();
    let mut best = 0;
    for u in 0..h.n() {
        for v in u + 1..h.n() {
            best = best.max(rows[u].and_count(&rows[v]));
        }
    }
    best
}

/// True iff no two distinct vertices share two neighbors.
pub fn is_c4_free(g: &Graph) -> bool {
    max_codegree(g) <= 1
}

/// Some 4-cycle `a - x - b - y`, if one exists (loops ignored).
pub fn find_c4(g: &Graph) -> Option<[usize; 4]> {
    let h = g.without_loops();
    for a in 0..h.n() {
        for b in a + 1..h.n() {
            let common: Vec<usize> =
                h.neighbors(a).iter().copied().filter(|&x| h.has_edge(x, b)).take(2).collect();
            if common.len() == 2 {
                return Some([a, common[0], b, common[1]]);
            }
        }
    }
    None
}

/// All triangles `(a, b, c)` with `a < b < c`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        if a == b {
            continue;
        }
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push((a, b, c));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Number of triangles through each edge, in [`Graph::edges`] order.
pub fn triangles_per_edge(g: &Graph) -> Vec<usize> {
    let h = g.without_loops();
    g.edges()
        .iter()
        .map(|&(u, v)| if u == v { 0 } else { h.codegree(u, v) })
        .collect()
}
