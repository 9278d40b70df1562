//! Named example graphs with their expected verdicts.

use serde::{Deserialize, Serialize};

use crate::certify::{search_countable, search_tame, CertificateFile, SearchConfig, Status, Tree};
use crate::error::Result;
use crate::graph::generators::{all_trees, complete, complete_bipartite, cycle, dodecahedron, petersen, subdivision};
use crate::graph::Graph;

/// Two pentagons sharing an edge, labeled `w, s, t, a1, b1, a2, b2, m`:
/// the pentagons are `w s t a1 b1` and `a1 a2 b2 m b1`. With ends `{w, m}`
/// it is a connector.
pub fn pentagon_pair() -> Graph {
    Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 6), (6, 7), (7, 4)]).expect("valid")
}

/// Ends of [`pentagon_pair`] as a connector.
pub const PENTAGON_PAIR_ENDS: [usize; 2] = [0, 7];

/// Three pentagons in a chain: [`pentagon_pair`] plus `a2 x y z b2`.
pub fn pentagon_chain() -> Graph {
    pentagon_pair().with_isolated(3).with_edges([(5, 8), (8, 9), (9, 10), (10, 6)]).expect("valid")
}

/// [`pentagon_pair`] plus the path `w x p m`; a connector with ends
/// `{b2, p}`.
pub fn pentagon_pair_bridged() -> Graph {
    pentagon_pair().with_isolated(2).with_edges([(0, 8), (8, 9), (9, 7)]).expect("valid")
}

pub const BRIDGED_ENDS: [usize; 2] = [6, 9];

/// [`pentagon_pair_bridged`] closed by the path `p y z b2`.
pub fn pentagon_pair_closed() -> Graph {
    pentagon_pair_bridged().with_isolated(2).with_edges([(9, 10), (10, 11), (11, 6)]).expect("valid")
}

/// Inner pentagon `a_i`, outer pentagon `d_i`, joined by the 2-paths
/// `a_i b_i d_i` and `a_i c_i d_{i+1}`. Labels: `a_i = i`, `b_i = 5 + i`,
/// `c_i = 10 + i`, `d_i = 15 + i`.
pub fn double_pentagon() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.extend([(i, j), (15 + i, 15 + j), (i, 5 + i), (5 + i, 15 + i), (i, 10 + i), (10 + i, 15 + j)]);
    }
    Graph::new(20, edges).expect("valid")
}

/// The `k`-th graph (1 to 5) of a growing sequence of tame graphs: a
/// 4-cycle `r u l d` with paths added through the new vertices `uu`, `dd`.
pub fn tame_sequence(k: usize) -> Graph {
    assert!((1..=5).contains(&k), "the sequence has five graphs");
    // r=0 u=1 l=2 d=3 uu=4 ruu=5 ru=6 luu=7 lu=8 dd=9 rdd=10 rd=11 ldd=12 ld=13
    let steps: [&[(usize, usize)]; 5] = [
        &[(0, 1), (1, 2), (2, 3), (3, 0)],
        &[(0, 6), (6, 5), (5, 4), (4, 1)],
        &[(2, 8), (8, 7), (7, 4)],
        &[(0, 11), (11, 10), (10, 9), (9, 3)],
        &[(2, 13), (13, 12), (12, 9)],
    ];
    let edges: Vec<(usize, usize)> = steps[..k].iter().flat_map(|s| s.iter().copied()).collect();
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    Graph::new(n, edges).expect("valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Tame,
    Countable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub kind: Kind,
    /// Search with the axiom table enabled.
    pub axioms: bool,
    pub expected: Status,
    pub figure: String,
}

fn entry(name: impl Into<String>, graph: Graph, kind: Kind, expected: Status, figure: &str) -> CorpusEntry {
    CorpusEntry { name: name.into(), graph, kind, axioms: true, expected, figure: figure.into() }
}

/// The built-in corpus.
pub fn builtin() -> Vec<CorpusEntry> {
    use Kind::*;
    use Status::*;
    let mut out = Vec::new();
    for l in 3..=12 {
        out.push(entry(format!("C{l}-tame"), cycle(l), Tame, Certified, "all cycles are tame"));
    }
    for k in 1..=5 {
        out.push(entry(format!("tame-sequence-{k}"), tame_sequence(k), Tame, Certified, "growing tame sequence"));
    }
    out.push(entry("K4-subdivided-tame", subdivision(&complete(4)), Tame, Certified, "1-subdivision of K4 (axiom)"));
    let mut bare = entry("K4-subdivided-tame-no-axioms", subdivision(&complete(4)), Tame, Unknown, "1-subdivision of K4 without axioms");
    bare.axioms = false;
    out.push(bare);
    out.push(entry("K2-3-tame", complete_bipartite(2, 3), Tame, Unknown, "K2,3 is not tame"));
    for l in 5..=12 {
        out.push(entry(format!("C{l}"), cycle(l), Countable, Certified, "cycles of length at least 5"));
    }
    for (i, t) in all_trees(10).into_iter().filter(|t| t.n() >= 2).enumerate() {
        out.push(entry(format!("tree-{}-{i}", t.n()), t, Countable, Certified, "trees"));
    }
    out.push(entry("pentagon-pair", pentagon_pair(), Countable, Certified, "pentagon joined to a pentagon"));
    out.push(entry("pentagon-chain", pentagon_chain(), Countable, Certified, "chain of pentagons"));
    out.push(entry("pentagon-pair-bridged", pentagon_pair_bridged(), Countable, Certified, "pentagon pair with a 2-path connector"));
    out.push(entry("pentagon-pair-closed", pentagon_pair_closed(), Countable, Certified, "bridged pair as a connector"));
    out.push(entry("double-pentagon", double_pentagon(), Countable, Certified, "two pentagons joined by 2-paths"));
    out.push(entry("K4-subdivided", subdivision(&complete(4)), Countable, Certified, "subdivided complete graphs"));
    out.push(entry("K5-subdivided", subdivision(&complete(5)), Countable, Certified, "subdivided complete graphs"));
    out.push(entry("C3", cycle(3), Countable, RefutedGirth, "girth at least 5 is necessary"));
    out.push(entry("C4", cycle(4), Countable, RefutedGirth, "girth at least 5 is necessary"));
    out.push(entry("K4", complete(4), Countable, RefutedGirth, "girth at least 5 is necessary"));
    out.push(entry("K2-3", complete_bipartite(2, 3), Countable, RefutedGirth, "girth at least 5 is necessary"));
    out.push(entry(
        "triangle-with-tail",
        Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).expect("valid"),
        Countable,
        RefutedGirth,
        "girth at least 5 is necessary",
    ));
    out.push(entry("petersen", petersen(), Countable, Unknown, "open: Petersen graph"));
    out.push(entry("dodecahedron", dodecahedron(), Countable, Unknown, "open: dodecahedral graph"));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub name: String,
    pub expected: Status,
    pub got: Status,
    pub nodes: u64,
    pub passed: bool,
}

/// Runs the search matching each entry's kind at the given budget.
pub fn run_entry(e: &CorpusEntry, budget: u64) -> Result<EntryOutcome> {
    certify_entry(e, budget, None).map(|(o, _)| o)
}

/// As [`run_entry`], also returning the certificate file when one was
/// found. `memo_cap` bounds the search memo tables.
pub fn certify_entry(e: &CorpusEntry, budget: u64, memo_cap: Option<usize>) -> Result<(EntryOutcome, Option<CertificateFile>)> {
    let cfg = SearchConfig { budget, axioms: e.axioms, memo_cap, ..SearchConfig::default() };
    let (got, nodes, cert) = match e.kind {
        Kind::Tame => {
            let v = search_tame(&e.graph, &cfg)?;
            let cert = v.certificate.zip(v.map).map(|(c, m)| CertificateFile::new(e.graph.clone(), Tree::Tame(c), m));
            (v.status, v.nodes, cert)
        }
        Kind::Countable => {
            let v = search_countable(&e.graph, &cfg)?;
            let cert = v.certificate.zip(v.map).map(|(c, m)| CertificateFile::new(e.graph.clone(), Tree::Countable(c), m));
            (v.status, v.nodes, cert)
        }
    };
    let outcome = EntryOutcome { name: e.name.clone(), expected: e.expected, got, nodes, passed: got == e.expected };
    Ok((outcome, cert))
}
