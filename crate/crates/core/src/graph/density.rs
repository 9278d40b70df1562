//! Screen for subgraphs with `|E(F')| > 2|V(F')| - 4` on at least three
//! vertices.
//!
//! Only subgraphs with three or more vertices are constrained: a single edge
//! would violate the raw inequality. A failing screen is a conjectural
//! obstruction to countability, never a proof.

use serde::{Deserialize, Serialize};

use super::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ScreenResult {
    Pass,
    Fail { witness: Vec<usize>, edges: usize },
}

impl ScreenResult {
    pub fn passed(&self) -> bool {
        matches!(self, ScreenResult::Pass)
    }
}

/// Largest graph screened by exhaustive subset enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 20;

pub fn two_density_screen(f: &Graph) -> ScreenResult {
    if f.n() <= EXHAUSTIVE_LIMIT {
        screen_exhaustive(f)
    } else {
        screen_by_flow(f)
    }
}

/// Enumerates every vertex subset; the witness is the smallest violating
/// subset, lowest bitmask first.
pub(crate) fn screen_exhaustive(f: &Graph) -> ScreenResult {
    let n = f.n();
    assert!(n <= 24, "exhaustive screen is limited to 24 vertices");
    let h = f.without_loops();
    let nb: Vec<u32> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let mut e = vec![0u16; 1 << n];
    let mut best: Option<(u32, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        e[mask as usize] = e[rest as usize] + (nb[v] & rest).count_ones() as u16;
        let k = mask.count_ones();
        if k >= 3 && e[mask as usize] as u32 + 4 > 2 * k && best.map_or(true, |(bk, _)| k < bk) {
            best = Some((k, mask));
        }
    }
    match best {
        None => ScreenResult::Pass,
        Some((_, mask)) => ScreenResult::Fail {
            witness: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
            edges: e[mask as usize] as usize,
        },
    }
}

/// Densest-subgraph reduction: for every vertex triple `T`, maximize
/// `e(S) - 2|S|` over `S ⊇ T` with a max-closure min cut. A value of at
/// least `-3` is a violation.
pub(crate) fn screen_by_flow(f: &Graph) -> ScreenResult {
    let h = f.without_loops();
    let n = h.n();
    let m = h.m();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (value, side) = max_closure(&h, &[a, b, c]);
                if value + 3 >= 0 {
                    let witness: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
                    let inner = h.induced(&witness).m();
                    return ScreenResult::Fail { witness, edges: inner };
                }
                debug_assert!(m as i64 >= value);
            }
        }
    }
    ScreenResult::Pass
}

const INF: i64 = i64::MAX / 4;

/// Returns `max e(S) - 2|S|` over `S ⊇ forced` and the optimal `S`.
fn max_closure(g: &Graph, forced: &[usize]) -> (i64, Vec<bool>) {
    let n = g.n();
    let m = g.m();
    let source = n + m;
    let sink = source + 1;
    let mut net = Dinic::new(n + m + 2);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(source, n + i, 1);
        net.add_edge(n + i, u, INF);
        net.add_edge(n + i, v, INF);
    }
    for v in 0..n {
        net.add_edge(v, sink, 2);
    }
    for &v in forced {
        net.add_edge(source, v, INF);
    }
    let cut = net.max_flow(source, sink);
    let side = net.source_side(source);
    // Forced vertices pay their cost through the cut like every other vertex.
    (m as i64 - cut, side[..n].to_vec())
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), level: vec![0; nodes], iter: vec![0; nodes] }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize) {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&mut self, s: usize) -> Vec<bool> {
        self.bfs(s);
        self.level.iter().map(|&l| l >= 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::rng;

    #[test]
    fn small_examples() {
        assert!(!two_density_screen(&complete(3)).passed());
        assert!(two_density_screen(&cycle(5)).passed());
        assert!(two_density_screen(&petersen()).passed());
        // K4 has 6 > 4 edges on 4 vertices
        assert!(!two_density_screen(&complete(4)).passed());
        assert!(two_density_screen(&complete_bipartite(2, 3)).passed());
    }

    #[test]
    fn flow_agrees_with_enumeration() {
        let mut r = rng::stream(11, "density-test");
        for i in 0..120 {
            let n = 4 + i % 10;
            let p = [0.2, 0.35, 0.5][i % 3];
            let g = gnp(n, p, &mut r);
            let a = screen_exhaustive(&g);
            let b = screen_by_flow(&g);
            assert_eq!(a.passed(), b.passed(), "graph {:?}", g.edges());
            if let ScreenResult::Fail { witness, edges } = b {
                assert!(witness.len() >= 3 && edges + 4 > 2 * witness.len());
            }
        }
    }

    #[test]
    fn large_graph_uses_flow() {
        assert!(two_density_screen(&dodecahedron().disjoint_union(&cycle(5))).passed());
        let dense = dodecahedron().with_edges([(0, 2)]).unwrap().disjoint_union(&complete(4));
        assert!(!two_density_screen(&dense).passed());
    }
}
