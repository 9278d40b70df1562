//! Automorphisms of the loopless polarity graph from orthogonal
//! reflections, and the orbit bookkeeping built on them.
//!
//! For odd `q` and a point `v` with `v·v ≠ 0`, the reflection
//! `x ↦ x − 2(x·v)/(v·v)·v` preserves the dot product, so it permutes
//! projective points, preserves orthogonality and fixes the set of absolute
//! points. Every generator is checked edge by edge before it is returned.

use super::{Field, PolarityGraph};

/// Reflection automorphisms of `p.loopless`, one per non-absolute point.
/// Empty in characteristic 2, where the construction degenerates.
pub fn reflection_automorphisms(p: &PolarityGraph) -> Vec<Vec<usize>> {
    let f = Field::new(p.q).expect("polarity graphs are only built for supported q");
    if f.characteristic() == 2 {
        return Vec::new();
    }
    let qs = f.order();
    let index_of = |x: [usize; 3]| -> usize {
        // canonical representative: scale the first nonzero coordinate to 1
        let lead = *x.iter().find(|&&c| c != 0).expect("nonzero vector");
        let s = f.inv(lead);
        let y = x.map(|c| f.mul(c, s));
        // points were enumerated in lexicographic order of (x, y, z)
        lex_rank(&y, qs)
    };
    let mut g0_index = vec![usize::MAX; qs * qs * qs];
    for (i, pt) in p.points.iter().enumerate() {
        g0_index[pt[0] * qs * qs + pt[1] * qs + pt[2]] = i;
    }
    let mut loopless_index = vec![usize::MAX; p.points.len()];
    for (i, &g) in p.loopless_points.iter().enumerate() {
        loopless_index[g] = i;
    }
    let two = f.add(1, 1);
    let mut out = Vec::new();
    for &gv in &p.loopless_points {
        let v = p.points[gv];
        let vv_inv = f.inv(f.dot(&v, &v));
        let mut perm = Vec::with_capacity(p.loopless.n());
        for &gx in &p.loopless_points {
            let x = p.points[gx];
            let coef = f.mul(f.mul(two, f.dot(&x, &v)), vv_inv);
            let y = [0, 1, 2].map(|i| f.sub(x[i], f.mul(coef, v[i])));
            let target = g0_index[index_of(y)];
            perm.push(loopless_index[target]);
        }
        if perm.iter().all(|&t| t != usize::MAX) && is_automorphism(&p.loopless, &perm) {
            out.push(perm);
        }
    }
    out
}

fn lex_rank(x: &[usize; 3], q: usize) -> usize {
    x[0] * q * q + x[1] * q + x[2]
}

pub fn is_automorphism(g: &crate::graph::Graph, perm: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &t in perm {
        if t >= g.n() || std::mem::replace(&mut seen[t], true) {
            return false;
        }
    }
    g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Orbit partition of `0..n` under the group generated by `gens`; returns
/// the orbit representatives (smallest element) with their orbit sizes.
pub fn orbits(n: usize, gens: &[&[usize]]) -> Vec<(usize, usize)> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut size = vec![0usize; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        size[r] += 1;
    }
    (0..n).filter(|&x| size[x] > 0).map(|x| (x, size[x])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::build_polarity;

    #[test]
    fn reflections_are_automorphisms_with_few_orbits() {
        for q in [3, 5, 7] {
            let p = build_polarity(q).unwrap();
            let gens = reflection_automorphisms(&p);
            assert_eq!(gens.len(), p.loopless.n());
            let refs: Vec<&[usize]> = gens.iter().map(|g| g.as_slice()).collect();
            let orb = orbits(p.loopless.n(), &refs);
            assert_eq!(orb.iter().map(|o| o.1).sum::<usize>(), p.loopless.n());
            assert!(orb.len() <= 2, "q = {q}: {orb:?}");
        }
    }

    #[test]
    fn even_q_has_no_reflections() {
        let p = build_polarity(4).unwrap();
        assert!(reflection_automorphisms(&p).is_empty());
    }
}
