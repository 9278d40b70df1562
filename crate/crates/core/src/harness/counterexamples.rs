//! Hosts on which the one-sided counting inequality fails for patterns of
//! girth at most 4.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::discrepancy::{discrepancy_search, SearchBound};
use crate::error::{Error, Result};
use crate::graph::generators::cycle;
use crate::graph::{is_c4_free, triangles};
use crate::homcount::{hom_weighted, Mode, ScaledHost, Value, VertexWeights, WeightedHost};
use crate::polarity::{build_polarity, triangle_break};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C4Report {
    pub q: u32,
    pub n: usize,
    pub quarter: usize,
    pub c4_free: bool,
    /// `hom_A(C4, G)`.
    pub sparse: Surd,
    /// `hom_A(C4, J)/n⁴` for the all-ones host.
    pub dense: Surd,
    /// `⌊n/4⌋⁴/n⁴`.
    pub dense_expected: Surd,
    /// `(1/4 - 1/n)⁴`.
    pub lower_bound: Surd,
}

/// Pattern vertex `i` of `C4` restricted to the `i`-th quarter of the
/// loopless polarity graph.
pub fn c4_counterexample(q: u32) -> Result<C4Report> {
    let g = build_polarity(q)?.loopless;
    let n = g.n();
    let c4_free = is_c4_free(&g);
    if !c4_free {
        return Err(Error::Precondition("polarity graph contains a 4-cycle".into()));
    }
    let quarter = n / 4;
    let sets: Vec<Vec<usize>> = (0..4).map(|i| (i * quarter..(i + 1) * quarter).collect()).collect();
    let alpha = VertexWeights::indicators(n, &sets)?;
    let f = cycle(4);
    let sparse = hom_weighted(&f, &ScaledHost::sparse(g.clone(), 0.5)?, &alpha, Mode::Exact)?.raw;
    let dense = hom_weighted(&f, &ScaledHost::dense(WeightedHost::constant(n, 1.0)?), &alpha, Mode::Exact)?.value;
    let frac = BigRational::new(BigInt::from(quarter), BigInt::from(n));
    let lb = BigRational::new(BigInt::from(1), BigInt::from(4)) - BigRational::new(BigInt::from(1), BigInt::from(n));
    let exact = |v: Value| v.exact().cloned().expect("exact mode");
    Ok(C4Report {
        q,
        n,
        quarter,
        c4_free,
        sparse: exact(sparse),
        dense: exact(dense),
        dense_expected: Surd::rational(frac).pow(4),
        lower_bound: Surd::rational(lb).pow(4),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub q: u32,
    pub seed: u64,
    pub edges_before: usize,
    pub edges_after: usize,
    /// `hom(C3, G')`.
    pub sparse: Surd,
    pub triangles_listed: usize,
    /// `(2/3)³`.
    pub dense: Surd,
    /// Float evaluation of `t(C3, 2/3)` through the dense counting path.
    pub dense_float: f64,
    pub discrepancy: SearchBound,
}

pub fn triangle_counterexample(q: u32, seed: u64, iters: usize) -> Result<TriangleReport> {
    let g = build_polarity(q)?.loopless;
    let gp = triangle_break(&g, seed)?;
    let n = gp.n();
    let f = cycle(3);
    let sparse = hom_weighted(&f, &ScaledHost::sparse_unchecked(gp.clone(), 1.0)?, &VertexWeights::ones(3, n), Mode::Exact)?.raw;
    let two_thirds = WeightedHost::constant(n, 2.0 / 3.0)?;
    let dense_float = hom_weighted(&f, &ScaledHost::dense(two_thirds.clone()), &VertexWeights::ones(3, n), Mode::Float)?
        .value
        .to_f64();
    let discrepancy = discrepancy_search(&gp, &two_thirds, iters, seed)?;
    Ok(TriangleReport {
        q,
        seed,
        edges_before: g.m(),
        edges_after: gp.m(),
        sparse: sparse.exact().cloned().expect("exact mode"),
        triangles_listed: triangles(&gp).len(),
        dense: Surd::ratio(2, 3).pow(3),
        dense_float,
        discrepancy,
    })
}
