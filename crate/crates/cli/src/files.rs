//! File access that records what was read and written.

use std::fs;
use std::path::{Path, PathBuf};

use countable::graph::io::{parse_edge_list, serialize_edge_list};
use countable::Graph;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, Result};

/// Inputs, outputs and seed of one invocation.
#[derive(Debug, Default)]
pub struct Session {
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub seed: Option<u64>,
}

impl Session {
    pub fn read_text(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        self.inputs.push(path.into());
        Ok(text)
    }

    pub fn read_graph(&mut self, path: &Path, allow_loops: bool) -> Result<Graph> {
        let text = self.read_text(path)?;
        parse_edge_list(&text, allow_loops).map_err(|source| CliError::Graph { path: path.into(), source })
    }

    pub fn read_json<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read_text(path)?;
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
    }

    pub fn write_text(&mut self, path: &Path, text: &str) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
        }
        fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })?;
        self.outputs.push(path.into());
        Ok(())
    }

    pub fn write_graph(&mut self, path: &Path, g: &Graph) -> Result<()> {
        self.write_text(path, &serialize_edge_list(g))
    }

    pub fn write_json<T: Serialize>(&mut self, path: &Path, value: &T) -> Result<()> {
        self.write_text(path, &to_json(value))
    }

    /// Writes the report to `path`, or returns it for standard output.
    pub fn report<T: Serialize>(&mut self, path: Option<&Path>, value: &T) -> Result<String> {
        match path {
            Some(p) => self.write_json(p, value).map(|()| String::new()),
            None => Ok(to_json(value)),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
