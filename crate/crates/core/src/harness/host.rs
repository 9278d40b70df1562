//! Dense comparison hosts built from a sparse graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homcount::WeightedHost;

/// `h̄ = min(1, d̄/√n)` with `d̄ = 2|E|/n`; zero for the empty graph.
pub fn constant_level(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let dbar = 2.0 * g.m() as f64 / n as f64;
    (dbar / (n as f64).sqrt()).min(1.0)
}

/// The constant host at level [`constant_level`].
pub fn constant_host(g: &Graph) -> Result<WeightedHost> {
    WeightedHost::constant(g.n(), constant_level(g))
}

/// `H(x, y) = min(1, √n · e_G(P(x), P(y)) / (|P(x)| |P(y)|))`, with
/// `e_G` counting ordered adjacent pairs.
pub fn partition_host(g: &Graph, parts: &[Vec<usize>]) -> Result<WeightedHost> {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::InvalidArgument(format!("part {i} is empty")));
        }
        for &v in p {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if part_of[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!("vertex {v} lies in two parts")));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidArgument(format!("vertex {v} lies in no part")));
    }
    let k = parts.len();
    let mut e = vec![0u64; k * k];
    for &(u, v) in g.edges() {
        let (a, b) = (part_of[u], part_of[v]);
        e[a * k + b] += 1;
        if u != v {
            e[b * k + a] += 1;
        }
    }
    let rn = (n as f64).sqrt();
    let mut values = vec![0.0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (part_of[x], part_of[y]);
            let dens = e[a * k + b] as f64 / (parts[a].len() * parts[b].len()) as f64;
            values[x * n + y] = (rn * dens).min(1.0);
        }
    }
    WeightedHost::new(n, values)
}
