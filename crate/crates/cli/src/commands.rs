//! One function per subcommand. Each returns what to print and the exit
//! code; files go through the [`Session`].

use std::collections::BTreeMap;
use std::path::Path;

use countable::certify::{search_countable, search_tame, CertificateFile, SearchConfig, Status, Tree};
use countable::graph::io::{serialize_edge_list, to_dot};
use countable::harness::{
    c4_counterexample, constant_host, constant_level, counting_experiment, discrepancy_search, estimate_against_constant,
    trim_with, triangle_counterexample, DiscrepancyEstimate,
};
use countable::homcount::{hom_weighted, Mode, ScaledHost, VertexWeights, Weight, WeightedHost};
use countable::polarity::{build_polarity, verify_polarity};
use countable::Graph;
use serde_json::{json, Value};

use crate::args::*;
use crate::corpus_dir;
use crate::error::{CliError, Result, EXIT_BUDGET, EXIT_FAILED, EXIT_OK};
use crate::files::Session;

/// Environment variable capping the entries of each search memo table.
pub const MEMO_CAP_VAR: &str = "COUNTABLE_MEMO_CAP";

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn report(stdout: String, ok: bool) -> Self {
        Output { stdout, stderr: String::new(), code: if ok { EXIT_OK } else { EXIT_FAILED } }
    }
}

pub fn memo_cap() -> Result<Option<usize>> {
    match std::env::var(MEMO_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{MEMO_CAP_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn describe(path: &Path, g: &Graph) -> Value {
    json!({ "path": path, "n": g.n(), "m": g.m() })
}

fn mode(exact: bool) -> Mode {
    if exact {
        Mode::Exact
    } else {
        Mode::Float
    }
}

pub fn polarity(a: &PolarityArgs, s: &mut Session) -> Result<Output> {
    let p = build_polarity(a.q)?;
    let g = if a.loopless { &p.loopless } else { &p.g0 };
    if let Some(o) = &a.output {
        s.write_graph(o, g)?;
    }
    if !a.verify {
        let stdout = if a.output.is_none() { serialize_edge_list(g) } else { String::new() };
        return Ok(Output { stdout, ..Output::default() });
    }
    let r = verify_polarity(&p);
    let checks: BTreeMap<&str, bool> = r.checks.iter().map(|c| (c.name.as_str(), c.passed)).collect();
    let report = json!({
        "schema": "countable.polarity/1",
        "q": a.q,
        "loopless": a.loopless,
        "n": g.n(),
        "m": g.m(),
        "passed": r.all_passed(),
        "checks": checks,
        "details": r.checks,
    });
    Ok(Output::report(s.report(a.report.as_deref(), &report)?, r.all_passed()))
}

fn read_weights(s: &mut Session, path: &Path, k: usize, n: usize) -> Result<VertexWeights> {
    let raw: BTreeMap<String, Vec<f64>> = s.read_json(path)?;
    let mut weights = vec![Weight::One; k];
    for (key, values) in raw {
        let v: usize = key
            .parse()
            .ok()
            .filter(|&v| v < k)
            .ok_or_else(|| CliError::Usage(format!("{}: {key:?} is not a pattern vertex", path.display())))?;
        weights[v] = Weight::Values(values);
    }
    Ok(VertexWeights::from_weights(n, weights)?)
}

pub fn hom(a: &HomArgs, s: &mut Session) -> Result<Output> {
    let f = s.read_graph(&a.pattern, false)?;
    let g = s.read_graph(&a.host, a.allow_loops)?;
    let w = match &a.weights {
        Some(p) => read_weights(s, p, f.n(), g.n())?,
        None => VertexWeights::ones(f.n(), g.n()),
    };
    let c = a.scaled.unwrap_or(1.0);
    let host = ScaledHost::sparse_unchecked(g.clone(), c)?;
    let r = hom_weighted(&f, &host, &w, mode(a.exact))?;
    let report = json!({
        "schema": "countable.hom/1",
        "pattern": describe(&a.pattern, &f),
        "host": describe(&a.host, &g),
        "weights": a.weights,
        "scale": a.scaled,
        "mode": r.mode,
        "raw": r.raw,
        "density": r.value,
        "normalized_count": r.normalized_count(),
    });
    Ok(Output::report(s.report(a.report.as_deref(), &report)?, true))
}

pub fn certify(cmd: &CertifyCommand, s: &mut Session) -> Result<Output> {
    let (a, countable) = match cmd {
        CertifyCommand::Verify(v) => return verify(v, s),
        CertifyCommand::Tame(a) => (a, false),
        CertifyCommand::Countable(a) => (a, true),
    };
    let f = s.read_graph(&a.graph, false)?;
    let cfg = SearchConfig { budget: a.budget, axioms: !a.no_axioms, memo_cap: memo_cap()?, ..SearchConfig::default() };
    let (status, nodes, exhausted, tree, map, extra) = if countable {
        let v = search_countable(&f, &cfg)?;
        let extra = json!({ "witness": v.witness, "conjectural_flags": v.conjectural_flags });
        (v.status, v.nodes, v.budget_exhausted, v.certificate.map(Tree::Countable), v.map, extra)
    } else {
        let v = search_tame(&f, &cfg)?;
        (v.status, v.nodes, v.budget_exhausted, v.certificate.map(Tree::Tame), v.map, Value::Null)
    };
    let mut emitted = None;
    if let (Some(path), Some(tree), Some(map)) = (&a.emit, tree, map) {
        s.write_json(path, &CertificateFile::new(f.clone(), tree, map))?;
        emitted = Some(path);
    }
    let mut report = json!({
        "schema": "countable.certify/1",
        "kind": if countable { "countable" } else { "tame" },
        "graph": describe(&a.graph, &f),
        "budget": a.budget,
        "axioms": !a.no_axioms,
        "status": status,
        "nodes": nodes,
        "budget_exhausted": exhausted,
        "certificate": emitted,
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut report, extra) {
        r.extend(e);
    }
    let code = if status == Status::Unknown && exhausted { EXIT_BUDGET } else { EXIT_OK };
    Ok(Output { stdout: s.report(a.report.as_deref(), &report)?, stderr: String::new(), code })
}

fn verify(a: &VerifyArgs, s: &mut Session) -> Result<Output> {
    let f = s.read_graph(&a.graph, false)?;
    let cert: CertificateFile = s.read_json(&a.cert)?;
    let result = cert.verify(&f, !a.no_axioms);
    let report = json!({
        "schema": "countable.verify/1",
        "graph": describe(&a.graph, &f),
        "certificate": a.cert,
        "kind": cert.kind(),
        "valid": result.is_ok(),
        "condition": result.as_ref().err().map(|v| v.condition.label()),
        "detail": result.as_ref().err().map(|v| v.detail.clone()),
    });
    Ok(Output::report(s.report(a.report.as_deref(), &report)?, result.is_ok()))
}

pub fn harness(cmd: &HarnessCommand, s: &mut Session) -> Result<Output> {
    match cmd {
        HarnessCommand::Counting(a) => {
            s.seed = Some(a.seed);
            let f = s.read_graph(&a.pattern, false)?;
            let g = build_polarity(a.q)?.loopless;
            let h = constant_host(&g)?;
            let r = counting_experiment(&f, &g, &h, a.c, a.trials, a.seed, mode(a.exact))?;
            let report = json!({
                "schema": "countable.counting/1",
                "inputs": {
                    "pattern": describe(&a.pattern, &f),
                    "host_graph": format!("loopless polarity q = {}", a.q),
                    "dense_host": "constant",
                    "h_bar": constant_level(&g),
                    "c": a.c,
                    "trials": a.trials,
                    "seed": a.seed,
                },
                "report": r,
            });
            Ok(Output::report(s.report(a.report.as_deref(), &report)?, true))
        }
        HarnessCommand::Discrepancy(a) => {
            s.seed = Some(a.seed);
            let g = s.read_graph(&a.graph, false)?;
            let est = match &a.host {
                None => estimate_against_constant(&g, a.iters, a.seed)?,
                Some(p) => {
                    let h: WeightedHost = s.read_json(p)?;
                    let lower = discrepancy_search(&g, &h, a.iters, a.seed)?;
                    DiscrepancyEstimate { upper: None, lower: Some(lower), host_h: p.display().to_string() }
                }
            };
            let report = json!({
                "schema": "countable.discrepancy/1",
                "graph": describe(&a.graph, &g),
                "iters": a.iters,
                "seed": a.seed,
                "estimate": est,
            });
            Ok(Output::report(s.report(a.report.as_deref(), &report)?, true))
        }
        HarnessCommand::Counterexample(a) => {
            let (report, ok) = match a.which {
                Construction::C4 => {
                    let r = c4_counterexample(a.q)?;
                    let ok = r.c4_free && r.sparse.is_zero() && r.dense == r.dense_expected;
                    (json!({ "schema": "countable.c4-counterexample/1", "passed": ok, "report": r }), ok)
                }
                Construction::Triangle => {
                    s.seed = Some(a.seed);
                    let r = triangle_counterexample(a.q, a.seed, a.iters)?;
                    let ok = r.sparse.is_zero();
                    (json!({ "schema": "countable.triangle-counterexample/1", "passed": ok, "report": r }), ok)
                }
            };
            Ok(Output::report(s.report(a.report.as_deref(), &report)?, ok))
        }
        HarnessCommand::Trim(a) => {
            s.seed = Some(a.seed);
            let g = s.read_graph(&a.graph, false)?;
            let h = constant_host(&g)?;
            let r = trim_with(&g, &h, a.pairs, a.seed);
            if let Some(o) = &a.output {
                s.write_graph(o, &r.trimmed)?;
            }
            let ok = r.chain_holds && r.complement_bound_holds;
            let report = json!({
                "schema": "countable.trim/1",
                "graph": describe(&a.graph, &g),
                "dense_host": "constant",
                "passed": ok,
                "report": r,
            });
            Ok(Output::report(s.report(a.report.as_deref(), &report)?, ok))
        }
    }
}

pub fn corpus(cmd: &CorpusCommand, s: &mut Session) -> Result<Output> {
    match cmd {
        CorpusCommand::Export(a) => {
            let m = corpus_dir::export(&a.dir, a.budget, memo_cap()?, s)?;
            let stdout = format!("wrote {} entries to {}\n", m.entries.len(), a.dir.display());
            Ok(Output { stdout, ..Output::default() })
        }
        CorpusCommand::Run(a) => {
            let summary = corpus_dir::run(&a.dir, a.budget, memo_cap()?, s)?;
            let mut stderr = String::new();
            for e in summary.entries.iter().filter(|e| !e.passed) {
                stderr.push_str(&format!(
                    "corpus entry {} failed: expected {:?}, got {:?}, certificate {}\n",
                    e.name, e.expected, e.got, e.certificate
                ));
            }
            let ok = summary.all_passed();
            Ok(Output { stdout: s.report(a.report.as_deref(), &summary)?, stderr, code: if ok { EXIT_OK } else { EXIT_FAILED } })
        }
    }
}

pub fn dot(a: &DotArgs, s: &mut Session) -> Result<Output> {
    let g = s.read_graph(&a.graph, a.allow_loops)?;
    let name = a.graph.file_stem().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let text = to_dot(&g, &name, &a.mark);
    match &a.output {
        Some(o) => {
            s.write_text(o, &text)?;
            Ok(Output::default())
        }
        None => Ok(Output { stdout: text, ..Output::default() }),
    }
}
