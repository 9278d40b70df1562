//! Homomorphism counts reduced by host automorphisms.
//!
//! If a group acts on the host, `hom(F, G)` is a sum over the orbits of the
//! image of one or two pinned pattern vertices, each term weighted by the
//! orbit size. For a pinned pair `(u, v)` the image of `v` is split into
//! orbits of the subgroup generated by those generators fixing the image of
//! `u`; any subgroup of the stabilizer gives a valid (if finer) split.

use serde::{Deserialize, Serialize};

use super::dp::{self, Budget};
use super::{build_problem, count_integral, order, ScaledHost, VertexWeights};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polarity::symmetry::orbits;
use crate::surd::Surd;

/// Pinned pattern vertices with the weighted host tuples to evaluate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricPlan {
    pub pins: Vec<usize>,
    /// Images of `pins` with multiplicities.
    pub terms: Vec<(Vec<usize>, u64)>,
    /// Elimination width of the pattern once `pins` are fixed.
    pub width: usize,
}

impl SymmetricPlan {
    /// `terms × n^{width + 1}`, the cost model used to pick the pins.
    pub fn cost(&self, n: usize) -> f64 {
        self.terms.len() as f64 * (n as f64).powi(self.width as i32 + 1)
    }
}

fn width_without(f: &Graph, pins: &[usize]) -> usize {
    let aux = f.filter_edges(|u, v| !pins.contains(&u) && !pins.contains(&v));
    let elim: Vec<bool> = (0..f.n()).map(|v| !pins.contains(&v)).collect();
    order::elimination_order_with_tail(&aux, &elim).width
}

/// Chooses no pin, one pin or a pair of pins, whichever minimizes
/// [`SymmetricPlan::cost`]; ties go to fewer pins.
pub fn plan_symmetric(f: &Graph, g: &Graph, gens: &[Vec<usize>]) -> SymmetricPlan {
    let n = g.n();
    let all: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
    let vertex_orbits = orbits(n, &all);
    let mut best = SymmetricPlan { pins: Vec::new(), terms: vec![(Vec::new(), 1)], width: width_without(f, &[]) };
    if f.n() == 0 {
        return best;
    }
    let singles: Vec<(Vec<usize>, u64)> = vertex_orbits.iter().map(|&(r, s)| (vec![r], s as u64)).collect();
    for v in 0..f.n() {
        let plan = SymmetricPlan { pins: vec![v], terms: singles.clone(), width: width_without(f, &[v]) };
        if plan.cost(n) < best.cost(n) {
            best = plan;
        }
    }
    // second-level orbits, per first representative, computed lazily
    let mut pair_orbits: Option<Vec<(usize, usize, Vec<(usize, usize)>)>> = None;
    for u in 0..f.n() {
        for v in 0..f.n() {
            if u == v {
                continue;
            }
            let width = width_without(f, &[u, v]);
            // pair terms are at least the number of vertex orbits
            if (vertex_orbits.len() as f64) * (n as f64).powi(width as i32 + 1) >= best.cost(n) {
                continue;
            }
            let po = pair_orbits.get_or_insert_with(|| {
                vertex_orbits
                    .iter()
                    .map(|&(r, s)| {
                        let fixing: Vec<&[usize]> = all.iter().copied().filter(|p| p[r] == r).collect();
                        (r, s, orbits(n, &fixing))
                    })
                    .collect()
            });
            let adjacent = f.has_edge(u, v);
            let mut terms = Vec::new();
            for (r, s, sub) in po.iter() {
                for &(y, t) in sub {
                    if adjacent && !g.has_edge(*r, y) {
                        continue;
                    }
                    terms.push((vec![*r, y], (*s * t) as u64));
                }
            }
            let plan = SymmetricPlan { pins: vec![u, v], terms, width };
            if plan.cost(n) < best.cost(n) {
                best = plan;
            }
        }
    }
    best
}

/// `hom(F, G)` summed over the terms of [`plan_symmetric`]. The caller
/// vouches that every generator is an automorphism of `g`.
pub fn hom_symmetric(f: &Graph, g: &Graph, gens: &[Vec<usize>], budget: &Budget) -> Result<u128> {
    let plan = plan_symmetric(f, g, gens);
    hom_with_plan(f, g, &plan, budget)
}

pub fn hom_with_plan(f: &Graph, g: &Graph, plan: &SymmetricPlan, budget: &Budget) -> Result<u128> {
    if f.has_loops() {
        return Err(Error::InvalidArgument("pattern graphs must be loop-free".into()));
    }
    let host = ScaledHost::sparse_unchecked(g.clone(), 1.0)?;
    let alpha = VertexWeights::ones(f.n(), g.n());
    let mut total: u128 = 0;
    for (images, mult) in &plan.terms {
        let pins: Vec<(usize, usize)> = plan.pins.iter().copied().zip(images.iter().copied()).collect();
        let c = count_pinned(f, &host, &alpha, &pins, budget)?;
        total = c
            .checked_mul(u128::from(*mult))
            .and_then(|x| total.checked_add(x))
            .ok_or_else(|| Error::Budget("count exceeds u128".into()))?;
    }
    Ok(total)
}

fn count_pinned(
    f: &Graph,
    host: &ScaledHost,
    alpha: &VertexWeights,
    pins: &[(usize, usize)],
    budget: &Budget,
) -> Result<u128> {
    if let Some(v) = count_integral(f, &[], host, alpha, pins, budget)? {
        return Ok(v[0] as u128);
    }
    let (problem, order) = build_problem(f, &[], host, alpha, pins, &|x| {
        if x != 0.0 {
            Surd::one()
        } else {
            Surd::zero()
        }
    })?;
    let s = dp::contract(problem, &order, budget)?.pop().expect("scalar");
    let r = s.as_rational().expect("integer count");
    num_traits::ToPrimitive::to_u128(r.numer()).ok_or_else(|| Error::Budget("count exceeds u128".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::homcount::hom_brute;
    use crate::polarity::{build_polarity, symmetry::reflection_automorphisms};

    #[test]
    fn agrees_with_plain_counts_on_polarity_hosts() {
        let p = build_polarity(5).unwrap();
        let gens = reflection_automorphisms(&p);
        let g = &p.loopless;
        for f in [cycle(5), complete_bipartite(2, 3), path(4), star(3), cycle(6)] {
            let want = hom_brute(&f, g, None).unwrap();
            assert_eq!(hom_symmetric(&f, g, &gens, &Budget::default()).unwrap(), want);
        }
    }

    #[test]
    fn pairs_of_pins_are_weighted_correctly() {
        let p = build_polarity(3).unwrap();
        let gens = reflection_automorphisms(&p);
        let g = &p.loopless;
        let f = complete_bipartite(2, 3);
        let fixed = |pins: Vec<usize>| {
            let all: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
            let mut terms = Vec::new();
            for (r, s) in orbits(g.n(), &all) {
                let fixing: Vec<&[usize]> = all.iter().copied().filter(|q| q[r] == r).collect();
                for (y, t) in orbits(g.n(), &fixing) {
                    terms.push((vec![r, y], (s * t) as u64));
                }
            }
            SymmetricPlan { pins, terms, width: 0 }
        };
        let want = hom_brute(&f, g, None).unwrap();
        assert_eq!(hom_with_plan(&f, g, &fixed(vec![0, 1]), &Budget::default()).unwrap(), want);
        assert_eq!(hom_with_plan(&f, g, &fixed(vec![0, 2]), &Budget::default()).unwrap(), want);
    }

    #[test]
    fn subdivided_k5_pins_two_branch_vertices() {
        let p = build_polarity(7).unwrap();
        let gens = reflection_automorphisms(&p);
        let plan = plan_symmetric(&subdivision(&complete(5)), &p.loopless, &gens);
        assert_eq!(plan.pins.len(), 2);
        assert!(plan.pins.iter().all(|&v| v < 5), "{:?}", plan.pins);
        assert_eq!(plan.width, 2);
    }

    #[test]
    fn no_generators_means_plain_counting() {
        let g = petersen();
        assert_eq!(hom_symmetric(&cycle(5), &g, &[], &Budget::default()).unwrap(), hom_brute(&cycle(5), &g, None).unwrap());
    }
}
