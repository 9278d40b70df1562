//! Homomorphism counting by plain backtracking, used as an oracle.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of partial maps visited.
pub const BRUTE_NODE_LIMIT: u64 = 1_000_000_000;

/// Number of homomorphisms `F → G`, with the image of `v` restricted to
/// `allowed[v]` when given. Host loops are allowed; pattern loops are not.
pub fn hom_brute(f: &Graph, g: &Graph, allowed: Option<&[Vec<bool>]>) -> Result<u128> {
    hom_brute_with_limit(f, g, allowed, BRUTE_NODE_LIMIT)
}

pub fn hom_brute_with_limit(f: &Graph, g: &Graph, allowed: Option<&[Vec<bool>]>, limit: u64) -> Result<u128> {
    if f.has_loops() {
        return Err(Error::InvalidArgument("pattern graphs must be loop-free".into()));
    }
    if let Some(a) = allowed {
        if a.len() != f.n() || a.iter().any(|s| s.len() != g.n()) {
            return Err(Error::InvalidArgument(format!(
                "allowed sets must be {} lists of length {}",
                f.n(),
                g.n()
            )));
        }
    }
    let mut nodes = 0u64;
    let mut total: u128 = 1;
    for comp in f.components() {
        let order = bfs_order(f, &comp);
        let mut pos = vec![usize::MAX; f.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        // earlier neighbors of each vertex, first one drives the candidates
        let back: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| f.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect())
            .collect();
        let mut image = vec![0usize; f.n()];
        let c = search(f, g, allowed, &order, &back, 0, &mut image, &mut nodes, limit)?;
        total = total.checked_mul(c).ok_or_else(|| Error::Budget("count exceeds u128".into()))?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

fn bfs_order(f: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; f.n()];
    let mut order = vec![comp[0]];
    seen[comp[0]] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in f.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn search(
    f: &Graph,
    g: &Graph,
    allowed: Option<&[Vec<bool>]>,
    order: &[usize],
    back: &[Vec<usize>],
    i: usize,
    image: &mut [usize],
    nodes: &mut u64,
    limit: u64,
) -> Result<u128> {
    if i == order.len() {
        return Ok(1);
    }
    let v = order[i];
    let all: Vec<usize>;
    let candidates: &[usize] = match back[i].first() {
        Some(&p) => g.neighbors(image[p]),
        None => {
            all = (0..g.n()).collect();
            &all
        }
    };
    let mut count = 0u128;
    for &x in candidates {
        if allowed.is_some_and(|a| !a[v][x]) {
            continue;
        }
        if !back[i].iter().skip(1).all(|&w| g.has_edge(image[w], x)) {
            continue;
        }
        *nodes += 1;
        if *nodes > limit {
            return Err(Error::Budget(format!("brute-force enumeration exceeded {limit} partial maps")));
        }
        image[v] = x;
        count += search(f, g, allowed, order, back, i + 1, image, nodes, limit)?;
    }
    Ok(count)
}
