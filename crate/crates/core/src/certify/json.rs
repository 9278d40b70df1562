//! Certificate files.

use serde::{Deserialize, Serialize};

use super::countable::{replay_countable, Condition, CountableCertificate, Violation};
use super::tame::TameCertificate;
use crate::graph::{canonical_form, Graph};

pub const CERTIFICATE_SCHEMA: &str = "countable.certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "tree", rename_all = "snake_case")]
pub enum Tree {
    Tame(TameCertificate),
    Countable(CountableCertificate),
}

/// A certificate with its target. `map[i]` is the target vertex playing
/// vertex `i` of the graph the tree builds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    pub target: Graph,
    #[serde(flatten)]
    pub tree: Tree,
    pub map: Vec<usize>,
}

impl CertificateFile {
    pub fn new(target: Graph, tree: Tree, map: Vec<usize>) -> Self {
        CertificateFile { schema: CERTIFICATE_SCHEMA.into(), target, tree, map }
    }

    pub fn kind(&self) -> &'static str {
        match self.tree {
            Tree::Tame(_) => "tame",
            Tree::Countable(_) => "countable",
        }
    }

    /// Checks the tree, that `map` carries the built graph exactly onto
    /// `target`, and that `target` is isomorphic to `f`.
    pub fn verify(&self, f: &Graph, allow_axioms: bool) -> Result<(), Violation> {
        let malformed = |e: crate::Error| Violation { condition: Condition::Malformed, detail: e.to_string() };
        if self.schema != CERTIFICATE_SCHEMA {
            return Err(Violation { condition: Condition::Malformed, detail: format!("unknown schema {:?}", self.schema) });
        }
        let built = match &self.tree {
            Tree::Tame(t) => {
                if t.uses_axioms() && !allow_axioms {
                    return Err(Violation { condition: Condition::Malformed, detail: "axioms are disabled".into() });
                }
                t.replay().map_err(malformed)?
            }
            Tree::Countable(c) => {
                if c.uses_axioms() && !allow_axioms {
                    return Err(Violation { condition: Condition::Malformed, detail: "axioms are disabled".into() });
                }
                replay_countable(c)?
            }
        };
        let target_err = |detail: String| Violation { condition: Condition::Target, detail };
        let n = self.target.n();
        if built.n() != n || self.map.len() != n || built.m() != self.target.m() {
            return Err(target_err(format!(
                "built graph has {} vertices and {} edges, target {} and {}",
                built.n(),
                built.m(),
                n,
                self.target.m()
            )));
        }
        let mut hit = vec![false; n];
        for &v in &self.map {
            if v >= n || std::mem::replace(&mut hit[v], true) {
                return Err(target_err("map is not a bijection".into()));
            }
        }
        if let Some(&(a, b)) = built.edges().iter().find(|&&(a, b)| !self.target.has_edge(self.map[a], self.map[b])) {
            return Err(target_err(format!("edge ({a}, {b}) is not mapped onto a target edge")));
        }
        if canonical_form(&self.target, None).map_err(malformed)? != canonical_form(f, None).map_err(malformed)? {
            return Err(target_err("certificate target is not isomorphic to the given graph".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{search_countable, search_tame, SearchConfig};
    use crate::graph::generators::*;

    #[test]
    fn round_trip_and_verify() {
        let f = cycle(7);
        let v = search_countable(&f, &SearchConfig::default()).unwrap();
        let file = CertificateFile::new(f.clone(), Tree::Countable(v.certificate.unwrap()), v.map.unwrap());
        let text = serde_json::to_string_pretty(&file).unwrap();
        assert!(text.contains("\"kind\": \"countable\""));
        let back: CertificateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.verify(&f, true), Ok(()));
        assert_eq!(back.verify(&cycle(8), true).unwrap_err().condition, Condition::Target);
    }

    #[test]
    fn broken_map_is_rejected() {
        let f = path(4);
        let v = search_tame(&f, &SearchConfig::default()).unwrap();
        let mut file = CertificateFile::new(f.clone(), Tree::Tame(v.certificate.unwrap()), v.map.unwrap());
        file.map.swap(0, 1);
        file.map.swap(1, 3);
        assert!(file.verify(&f, true).is_err());
    }

    #[test]
    fn axiom_certificates_respect_the_switch() {
        let f = subdivision(&complete(4));
        let v = search_tame(&f, &SearchConfig::default()).unwrap();
        let file = CertificateFile::new(f.clone(), Tree::Tame(v.certificate.unwrap()), v.map.unwrap());
        assert_eq!(file.verify(&f, true), Ok(()));
        assert!(file.verify(&f, false).is_err());
    }
}
