use super::{Graph, RootedPattern};

/// Two copies of `J` identified exactly on its ends.
///
/// The first copy keeps the labels of `J`; the non-end vertices of the
/// second copy are appended in increasing order. Because the ends are
/// independent no edge is produced twice.
pub fn glue(j: &RootedPattern) -> Graph {
    let (g, _) = glue_with_map(j);
    g
}

/// [`glue`] plus the labels of the second copy (`second[v]` is the image of
/// `v` in the glued graph).
pub fn glue_with_map(j: &RootedPattern) -> (Graph, Vec<usize>) {
    let f = j.pattern();
    let n = f.n();
    let mut second = vec![0; n];
    let mut next = n;
    for (v, slot) in second.iter_mut().enumerate() {
        if j.ends().binary_search(&v).is_ok() {
            *slot = v;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let edges = f
        .edges()
        .iter()
        .copied()
        .chain(f.edges().iter().map(|&(u, v)| (second[u], second[v])));
    (Graph::new(next, edges).expect("ends are independent, so the copies share no edge"), second)
}
