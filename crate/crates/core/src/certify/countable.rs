//! Countability certificates and their verification.
//!
//! Every certificate node describes a labeled graph: an edgeless graph, a
//! graph plus one pendant leaf, or an edge-disjoint union of islands and
//! connectors placed on `0..vertices` by explicit vertex maps. Verification
//! rebuilds that graph while checking every side condition, so a certificate
//! verifies against `F` exactly when the rebuilt graph is isomorphic to `F`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::tame::{verify_tame_cert, TameCertificate};
use crate::graph::{canonical_form, glue, Graph, RootedPattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CountableCertificate {
    Edgeless {
        vertices: usize,
    },
    /// The parent graph plus a leaf labeled `parent.vertex_count()` joined to
    /// `attach`.
    Pendant {
        parent: Box<CountableCertificate>,
        attach: usize,
    },
    IslandsBridges {
        vertices: usize,
        islands: Vec<Island>,
        connectors: Vec<Connector>,
    },
}

/// `map[i]` is the vertex of the enclosing graph playing vertex `i` of the
/// graph built by `cert`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Island {
    pub map: Vec<usize>,
    pub cert: CountableCertificate,
    /// Required on every island but the last.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame: Option<TameCertificate>,
}

/// `ends` are labels in the graph built by `cert`; `glue_tame` proves the
/// graph obtained by gluing two copies on the ends tame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub map: Vec<usize>,
    pub ends: Vec<usize>,
    pub cert: CountableCertificate,
    pub glue_tame: TameCertificate,
}

impl CountableCertificate {
    /// Number of vertices of the graph the certificate builds.
    pub fn vertex_count(&self) -> usize {
        match self {
            CountableCertificate::Edgeless { vertices } => *vertices,
            CountableCertificate::Pendant { parent, .. } => parent.vertex_count() + 1,
            CountableCertificate::IslandsBridges { vertices, .. } => *vertices,
        }
    }

    /// Whether any embedded tame certificate rests on an axiom.
    pub fn uses_axioms(&self) -> bool {
        match self {
            CountableCertificate::Edgeless { .. } => false,
            CountableCertificate::Pendant { parent, .. } => parent.uses_axioms(),
            CountableCertificate::IslandsBridges { islands, connectors, .. } => {
                islands.iter().any(|i| i.cert.uses_axioms() || i.tame.as_ref().is_some_and(|t| t.uses_axioms()))
                    || connectors.iter().any(|c| c.cert.uses_axioms() || c.glue_tame.uses_axioms())
            }
        }
    }

    /// Number of rule nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            CountableCertificate::Edgeless { .. } => 1,
            CountableCertificate::Pendant { parent, .. } => 1 + parent.size(),
            CountableCertificate::IslandsBridges { islands, connectors, .. } => {
                1 + islands.iter().map(|i| i.cert.size()).sum::<usize>()
                    + connectors.iter().map(|c| c.cert.size()).sum::<usize>()
            }
        }
    }
}

/// The side condition a certificate breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Out-of-range labels, non-injective maps, bad tame steps.
    Malformed,
    /// (a) islands are pairwise vertex-disjoint.
    IslandsDisjoint,
    /// (b) every island but the last is tame.
    IslandsTame,
    /// (c) the ends of a connector are its vertices on islands, one per island.
    ConnectorEnds,
    /// (d) connectors share at most one vertex, an end of both.
    ConnectorsOverlap,
    /// Ends of a connector are independent in it.
    EndsIndependent,
    /// Gluing a connector to itself on its ends gives a tame graph.
    GlueTame,
    /// Parts share no edge.
    EdgeDisjoint,
    /// Every vertex lies in some part.
    Coverage,
    /// The rebuilt graph is isomorphic to the target.
    Target,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Malformed => "malformed",
            Condition::IslandsDisjoint => "(a) islands vertex-disjoint",
            Condition::IslandsTame => "(b) all but the last island tame",
            Condition::ConnectorEnds => "(c) ends are the island vertices, at most one per island",
            Condition::ConnectorsOverlap => "(d) connectors share at most one vertex, an end of both",
            Condition::EndsIndependent => "connector ends independent",
            Condition::GlueTame => "glued connector tame",
            Condition::EdgeDisjoint => "parts edge-disjoint",
            Condition::Coverage => "parts cover every vertex",
            Condition::Target => "isomorphic to the target",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} violated: {}", self.condition.label(), self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation(condition: Condition, detail: impl Into<String>) -> Violation {
    Violation { condition, detail: detail.into() }
}

/// Checks `cert` recursively and compares the graph it builds with `f` up to
/// isomorphism.
pub fn verify_countable_cert(f: &Graph, cert: &CountableCertificate) -> Result<(), Violation> {
    let g = replay_countable(cert)?;
    let same = g.n() == f.n()
        && g.m() == f.m()
        && canonical_form(&g, None).map_err(|e| violation(Condition::Malformed, e.to_string()))?
            == canonical_form(f, None).map_err(|e| violation(Condition::Malformed, e.to_string()))?;
    if !same {
        return Err(violation(
            Condition::Target,
            format!("certificate builds a graph with {} vertices and {} edges, not isomorphic to the target", g.n(), g.m()),
        ));
    }
    Ok(())
}

/// The graph built by `cert`, checking all side conditions on the way.
pub fn replay_countable(cert: &CountableCertificate) -> Result<Graph, Violation> {
    match cert {
        CountableCertificate::Edgeless { vertices } => Ok(Graph::empty(*vertices)),
        CountableCertificate::Pendant { parent, attach } => {
            let g = replay_countable(parent)?;
            if *attach >= g.n() {
                return Err(violation(Condition::Malformed, format!("pendant attaches to {attach} of {}", g.n())));
            }
            let n = g.n();
            g.with_isolated(1)
                .with_edges([(*attach, n)])
                .map_err(|e| violation(Condition::Malformed, e.to_string()))
        }
        CountableCertificate::IslandsBridges { vertices, islands, connectors } => {
            replay_islands_bridges(*vertices, islands, connectors)
        }
    }
}

fn tame_ok(g: &Graph, cert: &TameCertificate) -> Result<bool, Violation> {
    verify_tame_cert(g, cert).map_err(|e| violation(Condition::Malformed, e.to_string()))
}

fn check_map(map: &[usize], len: usize, n: usize, what: &str) -> Result<(), Violation> {
    if map.len() != len {
        return Err(violation(Condition::Malformed, format!("{what} map has {} entries for {len} vertices", map.len())));
    }
    let mut seen = HashSet::new();
    for &v in map {
        if v >= n {
            return Err(violation(Condition::Malformed, format!("{what} maps to vertex {v} of {n}")));
        }
        if !seen.insert(v) {
            return Err(violation(Condition::Malformed, format!("{what} map repeats vertex {v}")));
        }
    }
    Ok(())
}

fn replay_islands_bridges(n: usize, islands: &[Island], connectors: &[Connector]) -> Result<Graph, Violation> {
    if islands.is_empty() {
        return Err(violation(Condition::Malformed, "a decomposition needs at least one island"));
    }
    let mut island_of = vec![usize::MAX; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut covered = vec![false; n];
    for (i, island) in islands.iter().enumerate() {
        let g = replay_countable(&island.cert)?;
        check_map(&island.map, g.n(), n, &format!("island {i}"))?;
        for &v in &island.map {
            if island_of[v] != usize::MAX {
                return Err(violation(
                    Condition::IslandsDisjoint,
                    format!("islands {} and {i} share vertex {v}", island_of[v]),
                ));
            }
            island_of[v] = i;
            covered[v] = true;
        }
        let last = i + 1 == islands.len();
        match &island.tame {
            None if !last => {
                return Err(violation(Condition::IslandsTame, format!("island {i} has no tame certificate")));
            }
            Some(t) if !tame_ok(&g, t)? => {
                return Err(violation(Condition::IslandsTame, format!("tame certificate of island {i} does not match it")));
            }
            _ => {}
        }
        edges.extend(g.edges().iter().map(|&(a, b)| (island.map[a], island.map[b])));
    }
    let mut placed: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (j, c) in connectors.iter().enumerate() {
        let g = replay_countable(&c.cert)?;
        check_map(&c.map, g.n(), n, &format!("connector {j}"))?;
        for &e in &c.ends {
            if e >= g.n() {
                return Err(violation(Condition::Malformed, format!("connector {j} end {e} out of range")));
            }
        }
        let rooted = RootedPattern::new(g.clone(), c.ends.iter().copied())
            .map_err(|e| violation(Condition::EndsIndependent, format!("connector {j}: {e}")))?;
        if !tame_ok(&glue(&rooted), &c.glue_tame)? {
            return Err(violation(Condition::GlueTame, format!("connector {j} glued on its ends does not match its tame certificate")));
        }
        let verts: Vec<usize> = c.map.clone();
        let ends: Vec<usize> = rooted.ends().iter().map(|&e| c.map[e]).collect();
        let on_islands: Vec<usize> = {
            let mut v: Vec<usize> = verts.iter().copied().filter(|&v| island_of[v] != usize::MAX).collect();
            v.sort_unstable();
            v
        };
        let mut sorted_ends = ends.clone();
        sorted_ends.sort_unstable();
        if on_islands != sorted_ends {
            return Err(violation(
                Condition::ConnectorEnds,
                format!("connector {j} meets the islands in {on_islands:?} but its ends are {sorted_ends:?}"),
            ));
        }
        let mut hit = HashSet::new();
        for &e in &ends {
            if !hit.insert(island_of[e]) {
                return Err(violation(Condition::ConnectorEnds, format!("connector {j} has two ends on island {}", island_of[e])));
            }
        }
        for (k, (other, other_ends)) in placed.iter().enumerate() {
            let shared: Vec<usize> = verts.iter().copied().filter(|v| other.contains(v)).collect();
            if shared.len() > 1 || shared.iter().any(|v| !ends.contains(v) || !other_ends.contains(v)) {
                return Err(violation(
                    Condition::ConnectorsOverlap,
                    format!("connectors {k} and {j} share {shared:?}"),
                ));
            }
        }
        for &v in &verts {
            covered[v] = true;
        }
        edges.extend(g.edges().iter().map(|&(a, b)| (c.map[a], c.map[b])));
        placed.push((verts, ends));
    }
    let mut seen = HashSet::new();
    for &(a, b) in &edges {
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(violation(Condition::EdgeDisjoint, format!("edge ({a}, {b}) lies in two parts")));
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(violation(Condition::Coverage, format!("vertex {v} lies in no part")));
    }
    Graph::new(n, edges).map_err(|e| violation(Condition::Malformed, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::tame::TameStep;
    use crate::graph::generators::*;

    fn path_cert(k: usize) -> CountableCertificate {
        let mut c = CountableCertificate::Edgeless { vertices: 1 };
        for i in 0..k.saturating_sub(1) {
            c = CountableCertificate::Pendant { parent: Box::new(c), attach: i };
        }
        c
    }

    fn c4_tame() -> TameCertificate {
        TameCertificate {
            base: super::super::tame::TameBase::Edgeless { vertices: 1 },
            steps: vec![TameStep::PendantEdge { attach_to: 0 }, TameStep::ThreePath { u: 0, v: 1 }],
        }
    }

    /// C5 on 0..5: islands the edge 2-3 and the vertex 0; connectors 3-4-0
    /// and 0-1-2.
    fn five_cycle() -> CountableCertificate {
        CountableCertificate::IslandsBridges {
            vertices: 5,
            islands: vec![
                Island { map: vec![2, 3], cert: path_cert(2), tame: Some(TameCertificate {
                    base: super::super::tame::TameBase::Edgeless { vertices: 1 },
                    steps: vec![TameStep::PendantEdge { attach_to: 0 }],
                }) },
                Island { map: vec![0], cert: path_cert(1), tame: None },
            ],
            connectors: vec![
                Connector { map: vec![3, 4, 0], ends: vec![0, 2], cert: path_cert(3), glue_tame: c4_tame() },
                Connector { map: vec![0, 1, 2], ends: vec![0, 2], cert: path_cert(3), glue_tame: c4_tame() },
            ],
        }
    }

    #[test]
    fn five_cycle_certificate() {
        assert_eq!(verify_countable_cert(&cycle(5), &five_cycle()), Ok(()));
        assert_eq!(verify_countable_cert(&cycle(6), &five_cycle()).unwrap_err().condition, Condition::Target);
    }

    #[test]
    fn trees_by_pendants() {
        assert_eq!(verify_countable_cert(&path(6), &path_cert(6)), Ok(()));
        let bad = CountableCertificate::Pendant { parent: Box::new(path_cert(2)), attach: 5 };
        assert_eq!(replay_countable(&bad).unwrap_err().condition, Condition::Malformed);
    }

    #[test]
    fn connectors_sharing_two_vertices() {
        // two 2-paths between the same pair of single-vertex islands
        let cert = CountableCertificate::IslandsBridges {
            vertices: 4,
            islands: vec![
                Island { map: vec![0], cert: path_cert(1), tame: Some(TameCertificate::edgeless(1)) },
                Island { map: vec![2], cert: path_cert(1), tame: None },
            ],
            connectors: vec![
                Connector { map: vec![0, 1, 2], ends: vec![0, 2], cert: path_cert(3), glue_tame: c4_tame() },
                Connector { map: vec![0, 3, 2], ends: vec![0, 2], cert: path_cert(3), glue_tame: c4_tame() },
            ],
        };
        assert_eq!(replay_countable(&cert).unwrap_err().condition, Condition::ConnectorsOverlap);
    }

    #[test]
    fn mutations_name_their_condition() {
        let CountableCertificate::IslandsBridges { vertices, islands, connectors } = five_cycle() else { unreachable!() };
        let mut i2 = islands.clone();
        i2[1].map = vec![2];
        let r = replay_islands_bridges(vertices, &i2, &connectors);
        assert_eq!(r.unwrap_err().condition, Condition::IslandsDisjoint);
        let mut i2 = islands.clone();
        i2[0].tame = None;
        assert_eq!(replay_islands_bridges(vertices, &i2, &connectors).unwrap_err().condition, Condition::IslandsTame);
        let mut c2 = connectors.clone();
        c2[0].ends = vec![0, 1, 2];
        assert_eq!(replay_islands_bridges(vertices, &islands, &c2).unwrap_err().condition, Condition::EndsIndependent);
        let mut c2 = connectors.clone();
        c2[1].map = vec![0, 4, 2];
        assert_eq!(replay_islands_bridges(vertices, &islands, &c2).unwrap_err().condition, Condition::ConnectorsOverlap);
        let mut c2 = connectors;
        c2[1].glue_tame = TameCertificate::edgeless(4);
        assert_eq!(replay_islands_bridges(vertices, &islands, &c2).unwrap_err().condition, Condition::GlueTame);
    }
}
