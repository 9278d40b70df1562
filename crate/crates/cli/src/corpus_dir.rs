//! The on-disk corpus: `manifest.json`, edge lists under `graphs/` and
//! certificates under `certificates/`.

use std::path::{Path, PathBuf};

use countable::certify::{CertificateFile, Status, Tree};
use countable::corpus::{builtin, certify_entry, CorpusEntry, Kind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::files::Session;

pub const CORPUS_SCHEMA: &str = "countable.corpus/1";
pub const CORPUS_RUN_SCHEMA: &str = "countable.corpus-run/1";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Edge list, relative to the corpus directory.
    pub graph: String,
    pub kind: Kind,
    pub axioms: bool,
    pub expected: Status,
    pub figure: String,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub schema: String,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub kind: Kind,
    pub expected: Status,
    pub got: Status,
    pub nodes: u64,
    /// `verified`, `absent`, or the reason the bundled certificate failed.
    pub certificate: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub schema: String,
    pub budget: u64,
    pub entries: Vec<EntryResult>,
    pub passed: usize,
    pub failed: Vec<String>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed.is_empty()
    }
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Writes the built-in corpus with certificates found at `budget`.
pub fn export(dir: &Path, budget: u64, memo_cap: Option<usize>, session: &mut Session) -> Result<CorpusManifest> {
    let mut entries = Vec::new();
    for e in builtin() {
        let stem = file_stem(&e.name);
        let graph = format!("graphs/{stem}.el");
        session.write_graph(&dir.join(&graph), &e.graph)?;
        let (outcome, cert) = certify_entry(&e, budget, memo_cap)?;
        if !outcome.passed {
            return Err(CliError::Usage(format!(
                "built-in entry {} gives {:?}, expected {:?}",
                e.name, outcome.got, e.expected
            )));
        }
        let certificate = match cert {
            Some(c) => {
                let path = format!("certificates/{stem}.json");
                session.write_json(&dir.join(&path), &c)?;
                Some(path)
            }
            None => None,
        };
        entries.push(ManifestEntry {
            name: e.name,
            graph,
            kind: e.kind,
            axioms: e.axioms,
            expected: e.expected,
            figure: e.figure,
            certificate,
        });
    }
    let manifest = CorpusManifest { schema: CORPUS_SCHEMA.into(), entries };
    session.write_json(&dir.join(MANIFEST_FILE), &manifest)?;
    Ok(manifest)
}

pub fn load(dir: &Path, session: &mut Session) -> Result<CorpusManifest> {
    let path: PathBuf = dir.join(MANIFEST_FILE);
    if !path.is_file() {
        return Err(CliError::CorpusMissing(path));
    }
    let m: CorpusManifest = session.read_json(&path)?;
    if m.schema != CORPUS_SCHEMA {
        return Err(CliError::Usage(format!("{}: unknown schema {:?}", path.display(), m.schema)));
    }
    Ok(m)
}

fn check_certificate(file: &CertificateFile, entry: &CorpusEntry) -> String {
    let kind_ok = matches!((&file.tree, entry.kind), (Tree::Tame(_), Kind::Tame) | (Tree::Countable(_), Kind::Countable));
    if !kind_ok {
        return format!("certificate is {}, entry is {:?}", file.kind(), entry.kind);
    }
    match file.verify(&entry.graph, entry.axioms) {
        Ok(()) => "verified".into(),
        Err(v) => format!("invalid: {v}"),
    }
}

/// Certifies every entry, checks bundled certificates and compares with
/// the expected verdicts.
pub fn run(dir: &Path, budget: u64, memo_cap: Option<usize>, session: &mut Session) -> Result<CorpusSummary> {
    let manifest = load(dir, session)?;
    let mut entries = Vec::new();
    for m in manifest.entries {
        let graph = session.read_graph(&dir.join(&m.graph), false)?;
        let entry = CorpusEntry {
            name: m.name.clone(),
            graph,
            kind: m.kind,
            axioms: m.axioms,
            expected: m.expected,
            figure: m.figure.clone(),
        };
        let (outcome, _) = certify_entry(&entry, budget, memo_cap)?;
        let certificate = match &m.certificate {
            Some(p) => {
                let file: CertificateFile = session.read_json(&dir.join(p))?;
                check_certificate(&file, &entry)
            }
            None => "absent".into(),
        };
        let cert_ok = certificate == "verified" || certificate == "absent";
        entries.push(EntryResult {
            name: m.name,
            kind: m.kind,
            expected: m.expected,
            got: outcome.got,
            nodes: outcome.nodes,
            passed: outcome.passed && cert_ok,
            certificate,
        });
    }
    let failed: Vec<String> = entries.iter().filter(|e| !e.passed).map(|e| e.name.clone()).collect();
    Ok(CorpusSummary {
        schema: CORPUS_RUN_SCHEMA.into(),
        budget,
        passed: entries.len() - failed.len(),
        entries,
        failed,
    })
}
