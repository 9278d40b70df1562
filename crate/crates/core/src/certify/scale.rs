//! The scale constant `c` of a countability certificate on a given host.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::countable::{replay_countable, CountableCertificate};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, glue, Graph, RootedPattern};
use crate::homcount::{hom_weighted, Mode, ScaledHost, VertexWeights};
use crate::surd::Surd;

/// Largest exponent tried before giving up.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleConstraint {
    pub role: String,
    pub graph: Graph,
    /// `t(F, √n·G)`, the density before scaling.
    pub density_unscaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    /// `c = 2^{-m}`.
    pub exponent: u32,
    pub c: f64,
    pub constraints: Vec<ScaleConstraint>,
}

/// Tame islands other than the last, and every glued connector, at every
/// level of the tree.
fn collect(cert: &CountableCertificate, out: &mut Vec<(String, Graph)>) -> Result<()> {
    let bad = |e: super::Violation| Error::InvalidArgument(e.to_string());
    match cert {
        CountableCertificate::Edgeless { .. } => {}
        CountableCertificate::Pendant { parent, .. } => collect(parent, out)?,
        CountableCertificate::IslandsBridges { islands, connectors, .. } => {
            for (i, isl) in islands.iter().enumerate() {
                if i + 1 < islands.len() {
                    out.push((format!("island {i}"), replay_countable(&isl.cert).map_err(bad)?));
                }
                collect(&isl.cert, out)?;
            }
            for (j, c) in connectors.iter().enumerate() {
                let g = replay_countable(&c.cert).map_err(bad)?;
                let glued = glue(&RootedPattern::new(g, c.ends.iter().copied())?);
                out.push((format!("glued connector {j}"), glued));
                collect(&c.cert, out)?;
            }
        }
    }
    Ok(())
}

/// Largest `c = 2^{-m} ≤ 1/2` with `t(F, c√n·G) ≤ 1` for every constraint
/// graph of the certificate, by exact evaluation.
pub fn compute_scale_constant(cert: &CountableCertificate, g: &Graph) -> Result<ScaleReport> {
    if !crate::graph::is_c4_free(g) {
        return Err(Error::Precondition("host contains a 4-cycle".into()));
    }
    let n = g.n();
    if (g.max_degree() as f64).powi(2) > 4.0 * n as f64 {
        return Err(Error::Precondition("host maximum degree exceeds 2√n".into()));
    }
    let mut raw = Vec::new();
    collect(cert, &mut raw)?;
    let mut seen = HashSet::new();
    let host = ScaledHost::sparse_unchecked(g.clone(), 1.0)?;
    let mut dens: Vec<(usize, Surd)> = Vec::new();
    let mut constraints = Vec::new();
    for (role, f) in raw {
        if f.m() == 0 || !seen.insert(canonical_form(&f, None)?) {
            continue;
        }
        let t = hom_weighted(&f, &host, &VertexWeights::ones(f.n(), n), Mode::Exact)?;
        let v = t.value.exact().expect("exact mode").clone();
        constraints.push(ScaleConstraint { role, graph: f.clone(), density_unscaled: v.to_f64() });
        dens.push((f.m(), v));
    }
    for m in 1..=MAX_EXPONENT {
        let ok = dens.iter().all(|(e, t)| {
            let shrink = BigRational::new(BigInt::from(1), BigInt::from(2).pow(m * *e as u32));
            t.scale(&shrink) <= Surd::one()
        });
        if ok {
            return Ok(ScaleReport { exponent: m, c: 0.5f64.powi(m as i32), constraints });
        }
    }
    Err(Error::Budget(format!("no c ≥ 2^-{MAX_EXPONENT} satisfies the constraints")))
}
