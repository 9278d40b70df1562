//! Tameness certificates: a base graph grown by pendant edges and 3-edge
//! paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, generators, Graph};

/// Name of the only axiom: the 1-subdivision of `K4`.
pub const K4_SUBDIVIDED: &str = "K4_subdivided";

/// Graphs accepted as tame without a derivation.
pub fn axiom_graph(name: &str) -> Option<Graph> {
    match name {
        K4_SUBDIVIDED => Some(generators::subdivision(&generators::complete(4))),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TameBase {
    Edgeless { vertices: usize },
    /// An axiom graph followed by `isolated` extra vertices.
    Axiom { name: String, isolated: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TameStep {
    /// New leaf joined to `attach_to`.
    PendantEdge { attach_to: usize },
    /// Two new vertices `a, b` with edges `u-a`, `a-b`, `b-v`.
    ThreePath { u: usize, v: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameCertificate {
    pub base: TameBase,
    pub steps: Vec<TameStep>,
}

impl TameCertificate {
    pub fn edgeless(k: usize) -> Self {
        TameCertificate { base: TameBase::Edgeless { vertices: k }, steps: Vec::new() }
    }

    pub fn uses_axioms(&self) -> bool {
        matches!(self.base, TameBase::Axiom { .. })
    }

    /// The graph built by the certificate. New vertices get the next free
    /// labels, `a` before `b` for a 3-path.
    pub fn replay(&self) -> Result<Graph> {
        let (mut n, mut edges) = match &self.base {
            TameBase::Edgeless { vertices } => (*vertices, Vec::new()),
            TameBase::Axiom { name, isolated } => {
                let g = axiom_graph(name)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown tameness axiom {name:?}")))?;
                (g.n() + isolated, g.edges().to_vec())
            }
        };
        for (i, step) in self.steps.iter().enumerate() {
            let bad = |v: usize| Error::InvalidArgument(format!("step {i} refers to vertex {v} of {n}"));
            match *step {
                TameStep::PendantEdge { attach_to } => {
                    if attach_to >= n {
                        return Err(bad(attach_to));
                    }
                    edges.push((attach_to, n));
                    n += 1;
                }
                TameStep::ThreePath { u, v } => {
                    for w in [u, v] {
                        if w >= n {
                            return Err(bad(w));
                        }
                    }
                    edges.extend([(u, n), (n, n + 1), (n + 1, v)]);
                    n += 2;
                }
            }
        }
        Graph::new(n, edges)
    }
}

/// Replays `cert` and compares with `f` up to isomorphism. Malformed step
/// indices and unknown axioms are errors; a wrong graph is `false`.
pub fn verify_tame_cert(f: &Graph, cert: &TameCertificate) -> Result<bool> {
    verify_tame_cert_with(f, cert, true)
}

/// As [`verify_tame_cert`], optionally refusing axiom bases.
pub fn verify_tame_cert_with(f: &Graph, cert: &TameCertificate, allow_axioms: bool) -> Result<bool> {
    if !allow_axioms && cert.uses_axioms() {
        return Ok(false);
    }
    let g = cert.replay()?;
    if g.n() != f.n() || g.m() != f.m() {
        return Ok(false);
    }
    Ok(canonical_form(&g, None)? == canonical_form(f, None)?)
}
