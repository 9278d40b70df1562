//! The orthogonal-polarity graph of the projective plane over `F_q`.
//!
//! Vertices of `g0` are the `q² + q + 1` projective points, written with
//! first nonzero coordinate 1; `x ~ y` iff `x·y = 0`. Self-orthogonal
//! (absolute) points carry loops. The loopless graph is the subgraph
//! induced on the `q²` non-absolute points.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::rng;

pub mod field;
pub mod symmetry;

pub use field::Field;

#[derive(Clone, Debug)]
pub struct PolarityGraph {
    pub q: u32,
    /// Graph on all projective points, loops at absolute points.
    pub g0: Graph,
    /// Induced subgraph on the non-absolute points.
    pub loopless: Graph,
    /// Homogeneous coordinates of each vertex of `g0`.
    pub points: Vec<[usize; 3]>,
    /// `g0` index of each vertex of `loopless`.
    pub loopless_points: Vec<usize>,
}

pub fn build_polarity(q: u32) -> Result<PolarityGraph> {
    let f = Field::new(q)?;
    let qs = f.order();
    let mut points = Vec::with_capacity(qs * qs + qs + 1);
    for x in 0..qs {
        for y in 0..qs {
            for z in 0..qs {
                let p = [x, y, z];
                if p.iter().find(|&&c| c != 0) == Some(&1) {
                    points.push(p);
                }
            }
        }
    }
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            if f.dot(&points[i], &points[j]) == 0 {
                edges.push((i, j));
            }
        }
    }
    let g0 = Graph::with_loops(n, edges)?;
    let loopless_points: Vec<usize> = (0..n).filter(|&v| !g0.has_loop(v)).collect();
    let loopless = g0.induced(&loopless_points).without_loops();
    Ok(PolarityGraph { q, g0, loopless, points, loopless_points })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityReport {
    pub q: u32,
    pub checks: Vec<Check>,
}

impl PolarityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Largest field order whose spectrum is checked by [`verify_polarity`].
pub const SPECTRUM_CHECK_LIMIT: u32 = 13;

/// Tolerance on eigenvalues.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

/// One eigenvalue `q + 1`, all others `±√q`, within [`SPECTRUM_TOLERANCE`].
pub fn spectrum_check(q: usize, g0: &Graph) -> Check {
    let s = match graph::spectrum::adjacency_spectrum(g0) {
        Ok(s) => s,
        Err(e) => return check("spectrum", Some(e.to_string()), String::new()),
    };
    let Some((&top, rest)) = s.split_last() else {
        return check("spectrum", Some("empty graph".into()), String::new());
    };
    let r = (q as f64).sqrt();
    let dev_top = (top - (q as f64 + 1.0)).abs();
    let dev = rest.iter().map(|&x| (x.abs() - r).abs()).fold(0.0, f64::max);
    let worst = dev.max(dev_top);
    check(
        "spectrum",
        (worst > SPECTRUM_TOLERANCE).then(|| format!("eigenvalue off by {worst:e} from q+1 or ±√q")),
        format!("top {top:.12}, others ±√q within {worst:.1e}"),
    )
}

/// Runs every structural check. All but the spectrum use exact integer
/// arithmetic.
pub fn verify_polarity(p: &PolarityGraph) -> PolarityReport {
    let mut checks = verify_g0(p.q as usize, &p.g0);
    if p.q <= SPECTRUM_CHECK_LIMIT {
        checks.push(spectrum_check(p.q as usize, &p.g0));
    }
    checks.extend(verify_loopless(p.q as usize, &p.loopless));
    PolarityReport { q: p.q, checks }
}

fn check(name: &str, failure: Option<String>, ok: String) -> Check {
    match failure {
        None => Check { name: name.into(), passed: true, detail: ok },
        Some(detail) => Check { name: name.into(), passed: false, detail },
    }
}

/// Checks on the looped graph: size, loops, regularity, `A² = qI + J`, and
/// unique common neighbors.
pub fn verify_g0(q: usize, g0: &Graph) -> Vec<Check> {
    let n = g0.n();
    let mut out = Vec::new();
    let want = q * q + q + 1;
    out.push(check(
        "vertex_count",
        (n != want).then(|| format!("{n} vertices, expected {want}")),
        format!("{n} vertices"),
    ));
    let loops = g0.loop_count();
    out.push(check(
        "loop_count",
        (loops != q + 1).then(|| format!("{loops} loops, expected {}", q + 1)),
        format!("{loops} loops"),
    ));
    let irregular = (0..n).find(|&v| g0.degree(v) != q + 1);
    out.push(check(
        "regularity",
        irregular.map(|v| format!("vertex {v} has degree {}", g0.degree(v))),
        format!("{}-regular", q + 1),
    ));
    // (A²)_{xy} = |N(x) ∩ N(y)| with a loop making x its own neighbor.
    let rows = g0.rows();
    let mut bad = None;
    'outer: for x in 0..n {
        for y in x..n {
            let v = rows[x].and_count(&rows[y]);
            let expect = q * usize::from(x == y) + 1;
            if v != expect {
                bad = Some(format!("(A^2)[{x}][{y}] = {v}, expected {expect}"));
                break 'outer;
            }
        }
    }
    out.push(check("adjacency_square", bad, "A^2 = qI + J".into()));
    // Same fact by sorted-list intersection, phrased over distinct pairs.
    let mut bad = None;
    'pairs: for x in 0..n {
        for y in x + 1..n {
            let (a, b) = (g0.neighbors(x), g0.neighbors(y));
            let (mut i, mut j, mut common) = (0, 0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        common += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            if common != 1 {
                bad = Some(format!("vertices {x}, {y} have {common} common neighbors"));
                break 'pairs;
            }
        }
    }
    out.push(check("unique_common_neighbor", bad, "every distinct pair has one common neighbor".into()));
    out
}

/// Checks on the loopless graph: size, degrees, C4-freeness and one
/// triangle per edge.
pub fn verify_loopless(q: usize, g: &Graph) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check(
        "loopless_vertex_count",
        (g.n() != q * q).then(|| format!("{} vertices, expected {}", g.n(), q * q)),
        format!("{} vertices", g.n()),
    ));
    // In characteristic 2 the absolute points form a line whose pole (the
    // nucleus) loses all of its neighbors.
    let isolated = g.isolated();
    let nucleus_ok = if q % 2 == 0 { isolated.len() == 1 } else { isolated.is_empty() };
    let odd = (0..g.n()).find(|&v| g.degree(v) > 0 && !(q - 1..=q + 1).contains(&g.degree(v)));
    let failure = match (odd, nucleus_ok) {
        (Some(v), _) => Some(format!("vertex {v} has degree {}", g.degree(v))),
        (None, false) => Some(format!("{} isolated vertices", isolated.len())),
        (None, true) => None,
    };
    out.push(check(
        "loopless_degrees",
        failure,
        format!("degrees within [{}, {}], {} isolated", q - 1, q + 1, isolated.len()),
    ));
    let c4 = graph::predicates::find_c4(g);
    out.push(check(
        "loopless_c4_free",
        c4.map(|c| format!("4-cycle {c:?}")),
        "no two vertices share two neighbors".into(),
    ));
    let per_edge = graph::predicates::triangles_per_edge(g);
    let bad = per_edge.iter().position(|&t| t != 1);
    let tri = graph::triangles(g).len();
    out.push(check(
        "loopless_unique_triangle",
        bad.map(|i| format!("edge {:?} lies in {} triangles", g.edges()[i], per_edge[i])),
        format!("{} edges, {} triangles", g.m(), tri),
    ));
    out
}

/// Deletes one uniformly chosen edge from every triangle.
///
/// Requires every edge to lie in exactly one triangle. Triangles are visited
/// in lexicographic order and each draws from the `triangle_break` stream of
/// `seed`.
pub fn triangle_break(g: &Graph, seed: u64) -> Result<Graph> {
    let per_edge = graph::predicates::triangles_per_edge(g);
    if let Some(i) = per_edge.iter().position(|&t| t != 1) {
        let (u, v) = g.edges()[i];
        return Err(Error::Precondition(format!(
            "edge ({u}, {v}) lies in {} triangles, expected exactly one",
            per_edge[i]
        )));
    }
    let mut r = rng::stream(seed, "triangle_break");
    let mut removed = std::collections::HashSet::new();
    for (a, b, c) in graph::triangles(g) {
        let e = [(a, b), (a, c), (b, c)][r.gen_range(0..3)];
        removed.insert(e);
    }
    Ok(g.filter_edges(|u, v| !removed.contains(&(u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn q2_by_hand() {
        let p = build_polarity(2).unwrap();
        assert_eq!((p.g0.n(), p.g0.loop_count()), (7, 3));
        assert_eq!(p.loopless.n(), 4);
        assert_eq!(p.loopless.m(), 3);
        assert_eq!(graph::triangles(&p.loopless).len(), 1);
        assert_eq!(p.loopless.isolated().len(), 1);
        let r = verify_polarity(&p);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.check("loopless_unique_triangle").unwrap().detail, "3 edges, 1 triangles");
    }

    #[test]
    fn deleting_an_edge_breaks_the_square_identity() {
        let p = build_polarity(3).unwrap();
        let (u, v) = *p.g0.edges().iter().find(|(u, v)| u != v).unwrap();
        let broken = p.g0.filter_edges(|a, b| (a, b) != (u, v));
        let checks = verify_g0(3, &broken);
        assert!(!checks.iter().find(|c| c.name == "adjacency_square").unwrap().passed);
    }

    #[test]
    fn triangle_break_small_cases() {
        let t = triangle_break(&generators::complete(3), 9).unwrap();
        assert_eq!(t.m(), 2);
        assert!(t.is_connected());
        assert!(matches!(triangle_break(&generators::cycle(5), 1), Err(Error::Precondition(_))));
    }
}
