//! Gaps between weighted densities in a sparse host and a dense model.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{search_countable, SearchConfig, Status};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homcount::{hom_weighted, Mode, ScaledHost, Value, VertexWeights, Weight, WeightedHost};
use crate::rng;

/// Node budget of the advisory countability label.
const LABEL_BUDGET: u64 = 100_000;

/// Resolution of the uniform weights, which are multiples of `2^-10` so
/// exact runs stay cheap.
const WEIGHT_GRID: f64 = 1024.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Alpha {
    Ones,
    /// Disjoint sets, one per pattern vertex.
    Indicators { sets: Vec<Vec<usize>> },
    /// Independent weights drawn from `[0, 1]`.
    Uniform { weights: Vec<Vec<f64>> },
}

impl Alpha {
    pub fn weights(&self, k: usize, n: usize) -> Result<VertexWeights> {
        match self {
            Alpha::Ones => Ok(VertexWeights::ones(k, n)),
            Alpha::Indicators { sets } => VertexWeights::indicators(n, sets),
            Alpha::Uniform { weights } => {
                VertexWeights::from_weights(n, weights.iter().cloned().map(Weight::Values).collect())
            }
        }
    }

    fn sample(index: usize, k: usize, n: usize, seed: u64) -> Alpha {
        let mut r = rng::substream(seed, "counting-alpha", index as u64);
        match index % 3 {
            0 => Alpha::Ones,
            1 => {
                let mut sets = vec![Vec::new(); k];
                for x in 0..n {
                    let part = r.gen_range(0..=k);
                    if part < k {
                        sets[part].push(x);
                    }
                }
                Alpha::Indicators { sets }
            }
            _ => Alpha::Uniform {
                weights: (0..k)
                    .map(|_| (0..n).map(|_| f64::from(r.gen_range(0..=WEIGHT_GRID as u32)) / WEIGHT_GRID).collect())
                    .collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub index: usize,
    pub alpha: Alpha,
    pub t_g: Value,
    pub t_h: Value,
    pub gap: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub pattern: Graph,
    pub n: usize,
    pub c: f64,
    pub seed: u64,
    pub mode: Mode,
    /// Whether the pattern got a countability certificate.
    pub pattern_certified: bool,
    pub trials: Vec<Trial>,
    pub min_gap: f64,
}

/// Compares `t^α(F, c√n·G)` with `t^α(F, c·H)` over `trials` weightings;
/// trial `i` uses the family `i mod 3` (all ones, disjoint indicator
/// sets, uniform weights).
pub fn counting_experiment(
    f: &Graph,
    g: &Graph,
    h: &WeightedHost,
    c: f64,
    trials: usize,
    seed: u64,
    mode: Mode,
) -> Result<GapReport> {
    let n = g.n();
    if h.n() != n {
        return Err(Error::InvalidArgument(format!("host has {} vertices, graph {n}", h.n())));
    }
    let sparse = ScaledHost::sparse(g.clone(), c)?;
    let scaled: Vec<f64> = h.values().iter().map(|&v| c * v).collect();
    let dense = ScaledHost::dense(WeightedHost::new(n, scaled)?);
    let k = f.n();
    let out: Vec<Result<Trial>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let alpha = Alpha::sample(i, k, n, seed);
            let w = alpha.weights(k, n)?;
            let t_g = hom_weighted(f, &sparse, &w, mode)?.value;
            let t_h = hom_weighted(f, &dense, &w, mode)?.value;
            let gap = match (&t_g, &t_h) {
                (Value::Exact(a), Value::Exact(b)) => Value::Exact(a.sub(b)),
                (a, b) => Value::Float(a.to_f64() - b.to_f64()),
            };
            Ok(Trial { index: i, alpha, t_g, t_h, gap })
        })
        .collect();
    let trials: Vec<Trial> = out.into_iter().collect::<Result<_>>()?;
    let min_gap = trials.iter().map(|t| t.gap.to_f64()).fold(f64::INFINITY, f64::min);
    let label = search_countable(f, &SearchConfig { budget: LABEL_BUDGET, ..SearchConfig::default() })
        .map(|v| v.status == Status::Certified)
        .unwrap_or(false);
    Ok(GapReport { pattern: f.clone(), n, c, seed, mode, pattern_certified: label, trials, min_gap })
}
