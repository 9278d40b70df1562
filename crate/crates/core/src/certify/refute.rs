//! Growth-rate evidence against tameness.
//!
//! For a tame `F` the ratio `hom(F, G) / n^{|V(F)| - |E(F)|/2}` stays bounded
//! on polarity graphs. A clearly positive log-log slope over several `q` is
//! reported as empirical evidence only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homcount::{symmetric::hom_symmetric, Budget};
use crate::polarity::{build_polarity, symmetry::reflection_automorphisms};

pub const DEFAULT_THRESHOLD: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefuteRow {
    pub q: u32,
    pub n: usize,
    /// Exact count, as a decimal string to survive JSON.
    pub hom: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefuteReport {
    pub rows: Vec<RefuteRow>,
    /// Least-squares slope of `ln ratio` against `ln n`.
    pub slope: f64,
    pub threshold: f64,
    pub empirically_not_tame: bool,
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn refute_tame_empirical(f: &Graph, qs: &[u32], threshold: f64, budget: &Budget) -> Result<RefuteReport> {
    if qs.len() < 2 {
        return Err(Error::InvalidArgument("a slope needs at least two field orders".into()));
    }
    let mut rows = Vec::new();
    for &q in qs {
        let p = build_polarity(q)?;
        let gens = reflection_automorphisms(&p);
        let g = &p.loopless;
        let hom = hom_symmetric(f, g, &gens, budget)?;
        let n = g.n();
        let expo = f.n() as f64 - f.m() as f64 / 2.0;
        let ratio = hom as f64 / (n as f64).powf(expo);
        rows.push(RefuteRow { q, n, hom: hom.to_string(), ratio });
    }
    if rows.iter().any(|r| r.ratio <= 0.0) {
        return Err(Error::Precondition("a zero count has no logarithm; the pattern has no copies".into()));
    }
    let x: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.ratio.ln()).collect();
    let slope = ls_slope(&x, &y);
    Ok(RefuteReport { rows, slope, threshold, empirically_not_tame: slope > threshold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::homcount::hom_brute;

    #[test]
    fn slope_of_a_line() {
        assert!((ls_slope(&[0.0, 1.0, 2.0], &[1.0, 1.5, 2.0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn counts_match_brute_force_on_small_fields() {
        let r = refute_tame_empirical(&complete_bipartite(2, 3), &[3, 5], DEFAULT_THRESHOLD, &Budget::default()).unwrap();
        for row in &r.rows {
            let g = build_polarity(row.q).unwrap().loopless;
            assert_eq!(row.hom, hom_brute(&complete_bipartite(2, 3), &g, None).unwrap().to_string());
        }
    }

    #[test]
    fn cycles_have_flat_ratios() {
        let r = refute_tame_empirical(&cycle(5), &[5, 7, 11], DEFAULT_THRESHOLD, &Budget::default()).unwrap();
        assert!(r.slope.abs() < 0.15, "{}", r.slope);
        assert!(!r.empirically_not_tame);
    }

    #[test]
    fn needs_two_points() {
        assert!(refute_tame_empirical(&cycle(5), &[5], 0.2, &Budget::default()).is_err());
    }
}
