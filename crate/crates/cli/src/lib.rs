//! Command-line front end: argument parsing, file formats, the on-disk
//! corpus and run manifests.

pub mod args;
pub mod commands;
pub mod corpus_dir;
pub mod error;
pub mod files;
pub mod manifest;

use args::{Cli, Command};
use commands::Output;
use error::Result;
use files::Session;
use manifest::RunManifest;

/// Runs a parsed command line. `args` are the raw arguments after the
/// program name, recorded in the manifest.
pub fn run(cli: &Cli, args: &[String]) -> Result<Output> {
    let mut s = Session::default();
    let out = match &cli.command {
        Command::Polarity(a) => commands::polarity(a, &mut s),
        Command::Hom(a) => commands::hom(a, &mut s),
        Command::Certify(c) => commands::certify(c, &mut s),
        Command::Harness(c) => commands::harness(c, &mut s),
        Command::Corpus(c) => commands::corpus(c, &mut s),
        Command::Dot(a) => commands::dot(a, &mut s),
    }?;
    if let Some(path) = &cli.manifest {
        let m = RunManifest::new(args, s.seed, &s.inputs, &s.outputs, out.code)?;
        let mut inner = Session::default();
        inner.write_json(path, &m)?;
    }
    Ok(out)
}
