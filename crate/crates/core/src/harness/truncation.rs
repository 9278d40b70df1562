//! The truncation step for connector profiles: cutting a profile at
//! `1/δ` loses at most `δ ∫ g²`, and `∫ g² = t(J ∨_I J)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{glue, RootedPattern};
use crate::graph::Graph;
use crate::homcount::{hom_brute, hom_weighted, partial_profile, Mode, ProfileValues, ScaledHost, VertexWeights};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub ends: Vec<usize>,
    pub delta: f64,
    pub c: f64,
    /// `t(J ∨_I J, c√n G) ≤ 1`.
    pub hypothesis_ok: bool,
    /// `∫ g_{J,I}`.
    pub integral: Surd,
    /// `∫ g_{J,I} 1[g > 1/δ]`.
    pub tail: Surd,
    /// `δ ∫ g²_{J,I}`.
    pub markov: Surd,
    /// `∫ g²_{J,I}`.
    pub integral_of_square: Surd,
    /// `t(J ∨_I J, c√n G)` computed directly.
    pub glued_density: Surd,
    /// The same density from a brute-force count, when requested.
    pub glued_density_brute: Option<Surd>,
    pub tail_within_markov: bool,
    pub gluing_identity: bool,
}

/// Exact check for `|I| ≤ 2`. `brute` adds a backtracking count of the
/// glued graph as an independent check of the gluing identity.
pub fn truncation_check(j: &RootedPattern, g: &Graph, delta: f64, c: f64, brute: bool) -> Result<TruncationReport> {
    if j.ends().len() > 2 {
        return Err(Error::InvalidArgument("truncation check supports at most two ends".into()));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("δ must be positive and finite, got {delta}")));
    }
    let f = j.pattern();
    let n = g.n();
    let host = ScaledHost::sparse(g.clone(), c)?;
    let p = partial_profile(f, j.ends(), &host, &VertexWeights::ones(f.n(), n), Mode::Exact)?;
    let ProfileValues::Exact(values) = &p.values else { unreachable!("exact mode") };
    let d = BigRational::from_float(delta).expect("finite");
    let norm = BigRational::new(BigInt::from(1), BigInt::from(n).pow(j.ends().len() as u32));
    let mut tail = Surd::zero();
    for v in values {
        if v.scale(&d) > Surd::one() {
            tail = tail.add(v);
        }
    }
    let tail = tail.scale(&norm);
    let integral = p.integral().exact().cloned().expect("exact");
    let sq = p.integral_of_square().exact().cloned().expect("exact");
    let markov = sq.scale(&d);
    let glued = glue(j);
    let t = hom_weighted(&glued, &host, &VertexWeights::ones(glued.n(), n), Mode::Exact)?.value;
    let glued_density = t.exact().cloned().expect("exact");
    let glued_density_brute = if brute {
        let count = hom_brute(&glued, g, None)?;
        let scale = host.edge_factor_exact(glued.m());
        let nv = BigRational::new(BigInt::from(1), BigInt::from(n).pow(glued.n() as u32));
        Some(Surd::integer(count as i128).mul(&scale).scale(&nv))
    } else {
        None
    };
    let gluing_identity = sq == glued_density && glued_density_brute.as_ref().is_none_or(|b| *b == glued_density);
    Ok(TruncationReport {
        ends: j.ends().to_vec(),
        delta,
        c,
        hypothesis_ok: glued_density <= Surd::one(),
        tail_within_markov: tail <= markov,
        integral,
        tail,
        markov,
        integral_of_square: sq,
        glued_density,
        glued_density_brute,
        gluing_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::polarity::build_polarity;

    #[test]
    fn two_path_on_q5() {
        let g = build_polarity(5).unwrap().loopless;
        let j = RootedPattern::new(path(3), [0, 2]).unwrap();
        let r = truncation_check(&j, &g, 0.1, 0.5, true).unwrap();
        assert!(r.tail_within_markov && r.gluing_identity && r.hypothesis_ok);
        assert!(r.markov.to_f64() <= 0.1);
    }

    #[test]
    fn extreme_thresholds() {
        let g = build_polarity(5).unwrap().loopless;
        let j = RootedPattern::new(path(3), [0, 2]).unwrap();
        // a huge δ puts the cut near zero: everything positive is cut
        let r = truncation_check(&j, &g, 1e12, 0.5, false).unwrap();
        assert_eq!(r.tail, r.integral);
        // a tiny δ cuts above every value: nothing is lost
        let r = truncation_check(&j, &g, 1e-6, 0.5, false).unwrap();
        assert!(r.tail.is_zero());
    }

    #[test]
    fn rejects_three_ends() {
        let g = build_polarity(3).unwrap().loopless;
        let j = RootedPattern::new(star(3), [1, 2, 3]).unwrap();
        assert!(truncation_check(&j, &g, 0.1, 0.5, false).is_err());
    }
}
