//! Run manifests: enough to rerun a command and compare its outputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const MANIFEST_SCHEMA: &str = "countable.manifest/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    /// Arguments after the program name.
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub versions: BTreeMap<String, String>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub exit_code: u8,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest_file(path: &Path) -> Result<FileDigest> {
    let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(FileDigest { path: path.into(), sha256: sha256_hex(&bytes) })
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("countable".to_string(), countable::VERSION.to_string()),
        ("countable-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ])
}

fn digests(paths: &[PathBuf]) -> Result<Vec<FileDigest>> {
    let mut seen = std::collections::BTreeSet::new();
    paths.iter().filter(|p| seen.insert(p.to_path_buf())).map(|p| digest_file(p)).collect()
}

impl RunManifest {
    pub fn new(args: &[String], seed: Option<u64>, inputs: &[PathBuf], outputs: &[PathBuf], exit_code: u8) -> Result<Self> {
        Ok(RunManifest {
            schema: MANIFEST_SCHEMA.into(),
            command_line: args.to_vec(),
            seed,
            versions: versions(),
            inputs: digests(inputs)?,
            outputs: digests(outputs)?,
            exit_code,
        })
    }
}
