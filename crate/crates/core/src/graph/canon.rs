//! Canonical forms by color refinement plus individualization search.
//!
//! The search tree is pruned with automorphisms discovered at the leaves:
//! a leaf whose certificate equals an earlier one yields an automorphism,
//! which lets the search jump back to the branching node and skip children
//! in the same orbit of the stabilizer of the current prefix.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph accepted by [`canonical_form`].
pub const CANON_LIMIT: usize = 64;

/// Isomorphism-invariant encoding of a graph, optionally with a
/// distinguished root set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_form(g: &Graph, roots: Option<&[usize]>) -> Result<CanonicalForm> {
    canonical_labeling(g, roots).map(|(f, _)| f)
}

/// Canonical form together with a labeling: `labeling[i]` is the vertex
/// placed at canonical position `i`.
pub fn canonical_labeling(g: &Graph, roots: Option<&[usize]>) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > CANON_LIMIT {
        return Err(Error::TooLarge { n, limit: CANON_LIMIT });
    }
    let mut is_root = vec![false; n];
    if let Some(r) = roots {
        for &v in r {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            is_root[v] = true;
        }
    }
    let rows: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
        .collect();
    let looped: Vec<bool> = (0..n).map(|v| rows[v] >> v & 1 == 1).collect();
    let mut initial: Vec<Vec<usize>> = Vec::new();
    for (root, lp) in [(true, true), (true, false), (false, true), (false, false)] {
        let cell: Vec<usize> = (0..n).filter(|&v| is_root[v] == root && looped[v] == lp).collect();
        if !cell.is_empty() {
            initial.push(cell);
        }
    }
    let mut header = vec![n as u8, is_root.iter().filter(|&&r| r).count() as u8];
    header.extend(initial.iter().map(|c| c.len() as u8));
    let mut search = Search { rows: &rows, n, header, first: None, best: None, autos: Vec::new() };
    let start = refine(&rows, initial);
    let mut path = Vec::new();
    search.visit(start, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Ok((CanonicalForm(best.cert), best.lab))
}

/// A map `a → b` that is an isomorphism carrying `roots_a` onto `roots_b`.
pub fn isomorphism(
    a: &Graph,
    roots_a: Option<&[usize]>,
    b: &Graph,
    roots_b: Option<&[usize]>,
) -> Result<Option<Vec<usize>>> {
    let (fa, la) = canonical_labeling(a, roots_a)?;
    let (fb, lb) = canonical_labeling(b, roots_b)?;
    if fa != fb {
        return Ok(None);
    }
    let mut map = vec![0; a.n()];
    for i in 0..a.n() {
        map[la[i]] = lb[i];
    }
    Ok(Some(map))
}

struct Leaf {
    cert: Vec<u8>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    header: Vec<u8>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Explores the subtree below `cells`. Returns `Some(level)` when the
    /// caller should unwind to the node whose prefix has length `level`.
    fn visit(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let cell = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            let child = refine(self.rows, child);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = self.certificate(&lab);
        let leaf = Leaf { cert, lab, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(Leaf { cert: leaf.cert.clone(), lab: leaf.lab.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let level = common_prefix(&first.path, &leaf.path);
            self.autos.push(mapping(self.n, &first.lab, &leaf.lab));
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first");
        if leaf.cert == best.cert {
            let level = common_prefix(&best.path, &leaf.path);
            self.autos.push(mapping(self.n, &best.lab, &leaf.lab));
            return Some(level);
        }
        if leaf.cert < best.cert {
            self.best = Some(leaf);
        }
        None
    }

    fn certificate(&self, lab: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = self.header.clone();
        let mut byte = 0u8;
        let mut bits = 0;
        let mut push = |b: bool, out: &mut Vec<u8>| {
            byte = byte << 1 | b as u8;
            bits += 1;
            if bits == 8 {
                out.push(byte);
                byte = 0;
                bits = 0;
            }
        };
        for i in 0..n {
            let row = self.rows[lab[i]];
            for &lj in &lab[i..] {
                push(row >> lj & 1 == 1, &mut out);
            }
        }
        if bits > 0 {
            out.push(byte << (8 - bits));
        }
        out
    }

    /// Whether `v` lies in the orbit of an explored child under the
    /// automorphisms that fix the current prefix pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..self.n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Permutation sending `from[i]` to `to[i]`.
fn mapping(n: usize, from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; n];
    for i in 0..n {
        gamma[from[i]] = to[i];
    }
    gamma
}

/// Equitable refinement of an ordered partition. Each cell is split by the
/// vector of neighbor counts into every cell, fragments sorted by that
/// vector, until the number of cells stops growing.
fn refine(rows: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |a, &v| a | 1 << v)).collect();
        let before = cells.len();
        let mut next = Vec::with_capacity(before);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (rows[v] & m).count_ones() as u8).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        cells = next;
        if cells.len() == before {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use rand::seq::SliceRandom;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut crate::rng::stream(seed, "canon-test"));
        g.relabel(&perm)
    }

    #[test]
    fn invariant_under_relabeling() {
        for g in [cycle(5), petersen(), dodecahedron(), subdivision(&complete(4)), Graph::empty(30)] {
            let f = canonical_form(&g, None).unwrap();
            for s in 0..20 {
                assert_eq!(canonical_form(&shuffled(&g, s), None).unwrap(), f);
            }
        }
    }

    #[test]
    fn separates_and_respects_roots() {
        assert_ne!(canonical_form(&cycle(5), None).unwrap(), canonical_form(&path(5), None).unwrap());
        let p = path(3);
        let ends = canonical_form(&p, Some(&[0, 2])).unwrap();
        let mixed = canonical_form(&p, Some(&[1, 0])).unwrap();
        assert_ne!(ends, mixed);
        assert_eq!(mixed, canonical_form(&p, Some(&[1, 2])).unwrap());
    }

    #[test]
    fn labeling_is_an_isomorphism() {
        let g = petersen();
        let h = shuffled(&g, 3);
        let map = isomorphism(&g, None, &h, None).unwrap().unwrap();
        assert_eq!(g.relabel(&map), h);
        assert!(isomorphism(&g, None, &dodecahedron(), None).unwrap().is_none());
    }

    #[test]
    fn size_limit() {
        assert!(canonical_form(&Graph::empty(CANON_LIMIT + 1), None).is_err());
    }
}
