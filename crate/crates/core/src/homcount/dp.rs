//! Variable elimination over factor tables indexed by host-vertex tuples.
//!
//! A problem has one variable per pattern vertex, each ranging over the
//! `n` host vertices, and a list of factors: unary weights, binary edge
//! tables and whatever tables elimination produces. Eliminating `v`
//! multiplies the factors that mention `v` and sums `v` out. Each step runs
//! as nested loops over the variables of the step; a factor is multiplied
//! in as soon as all its variables are assigned and a zero partial product
//! skips the rest of the branch. Loops follow the nonzero entries of a
//! sparse binary factor whenever one is available.

use std::sync::Arc;

use rayon::prelude::*;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Limits checked before any table is allocated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    /// Largest table produced by a single step.
    pub max_table_entries: u128,
    /// Upper bound on the loop iterations of the whole run, counted as the
    /// product of the domain sizes of each step.
    pub max_work: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_table_entries: 1 << 25, max_work: 1 << 42 }
    }
}

pub(crate) enum Table<T> {
    Dense(Vec<T>),
    /// 0/1 table stored as a flat bitset, `one` marks the set entries.
    Bits { bits: Vec<u64>, one: T },
}

impl<T: Scalar> Table<T> {
    #[inline]
    fn get(&self, i: usize) -> Option<&T> {
        match self {
            Table::Dense(v) => {
                let x = &v[i];
                (!x.is_zero()).then_some(x)
            }
            Table::Bits { bits, one } => (bits[i >> 6] >> (i & 63) & 1 == 1).then_some(one),
        }
    }

    fn value(&self, i: usize) -> T {
        self.get(i).cloned().unwrap_or_else(T::zero)
    }
}

/// Nonzero positions of a binary factor: `by_first[x]` lists the `y` with
/// `t[x, y] != 0` and `by_second[y]` the matching `x`.
pub(crate) struct Rows {
    by_first: Arc<Vec<Vec<u32>>>,
    by_second: Arc<Vec<Vec<u32>>>,
}

impl Clone for Rows {
    fn clone(&self) -> Self {
        Rows { by_first: self.by_first.clone(), by_second: self.by_second.clone() }
    }
}

pub(crate) struct Factor<T> {
    /// Variables in row-major order of `table`.
    pub vars: Vec<usize>,
    pub table: Arc<Table<T>>,
    pub rows: Option<Rows>,
}

impl<T> Clone for Factor<T> {
    fn clone(&self) -> Self {
        Factor { vars: self.vars.clone(), table: self.table.clone(), rows: self.rows.clone() }
    }
}

impl<T: Scalar> Factor<T> {
    pub fn scalar(v: T) -> Self {
        Factor { vars: Vec::new(), table: Arc::new(Table::Dense(vec![v])), rows: None }
    }

    pub fn unary(v: usize, values: Vec<T>) -> Self {
        Factor { vars: vec![v], table: Arc::new(Table::Dense(values)), rows: None }
    }

    /// A symmetric binary factor shared between all pattern edges.
    pub fn shared_binary(u: usize, v: usize, table: Arc<Table<T>>, rows: &Rows) -> Self {
        Factor { vars: vec![u, v], table, rows: Some(rows.clone()) }
    }
}

/// Builds a symmetric 0/1 table with its nonzero rows from adjacency lists.
pub(crate) fn adjacency_table<T: Scalar>(n: usize, adj: &[Vec<usize>]) -> (Arc<Table<T>>, Rows) {
    let mut bits = vec![0u64; (n * n).div_ceil(64)];
    for (x, nb) in adj.iter().enumerate() {
        for &y in nb {
            let i = x * n + y;
            bits[i >> 6] |= 1 << (i & 63);
        }
    }
    let lists: Arc<Vec<Vec<u32>>> =
        Arc::new(adj.iter().map(|nb| nb.iter().map(|&y| y as u32).collect()).collect());
    (Arc::new(Table::Bits { bits, one: T::one() }), Rows { by_first: lists.clone(), by_second: lists })
}

/// Builds a dense symmetric table and, when it is sparse enough, its rows.
pub(crate) fn dense_symmetric_table<T: Scalar>(n: usize, values: Vec<T>) -> (Arc<Table<T>>, Option<Rows>) {
    let rows = sparse_rows(n, &values);
    (Arc::new(Table::Dense(values)), rows)
}

fn sparse_rows<T: Scalar>(n: usize, values: &[T]) -> Option<Rows> {
    let nonzero = values.iter().filter(|x| !x.is_zero()).count();
    if nonzero * 2 > values.len() {
        return None;
    }
    let mut by_first = vec![Vec::new(); n];
    let mut by_second = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            if !values[x * n + y].is_zero() {
                by_first[x].push(y as u32);
                by_second[y].push(x as u32);
            }
        }
    }
    Some(Rows { by_first: Arc::new(by_first), by_second: Arc::new(by_second) })
}

pub(crate) struct Problem<T> {
    pub n: usize,
    pub nvars: usize,
    pub factors: Vec<Factor<T>>,
    /// Output variables, in the row-major order of the result.
    pub keep: Vec<usize>,
}

impl<T: Scalar> Problem<T> {
    /// Replaces variable `v` by the constant `x` in every factor.
    pub fn pin(&mut self, v: usize, x: usize) {
        let n = self.n;
        for f in &mut self.factors {
            let Some(pos) = f.vars.iter().position(|&w| w == v) else { continue };
            let k = f.vars.len();
            let rest: Vec<usize> = f.vars.iter().copied().filter(|&w| w != v).collect();
            let inner = n.pow((k - pos - 1) as u32);
            let size = n.pow(rest.len() as u32);
            let values: Vec<T> = (0..size)
                .map(|j| {
                    // split j into the digits before and after `pos`
                    let (hi, lo) = (j / inner, j % inner);
                    f.table.value((hi * n + x) * inner + lo)
                })
                .collect();
            *f = Factor { vars: rest, table: Arc::new(Table::Dense(values)), rows: None };
        }
    }
}

/// Domain-size product of each step of `order`, for budget checks.
fn plan_scopes(factor_vars: &[Vec<usize>], order: &[usize]) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = factor_vars.to_vec();
    let mut out = Vec::new();
    for &v in order {
        let mut scope: Vec<usize> = Vec::new();
        let mut rest = Vec::new();
        for s in sets.drain(..) {
            if s.contains(&v) {
                scope.extend(s.iter().copied().filter(|&w| w != v));
            } else {
                rest.push(s);
            }
        }
        scope.sort_unstable();
        scope.dedup();
        rest.push(scope.clone());
        sets = rest;
        out.push(scope);
    }
    out
}

/// Sums out every variable not in `p.keep` along `order` and returns the
/// table over `p.keep`. Variables that appear in no factor contribute a
/// factor `n` each unless they are kept.
pub(crate) fn contract<T: Scalar>(p: Problem<T>, order: &[usize], budget: &Budget) -> Result<Vec<T>> {
    let n = p.n;
    let nn = n as u128;
    let factor_vars: Vec<Vec<usize>> = p.factors.iter().map(|f| f.vars.clone()).collect();
    let scopes = plan_scopes(&factor_vars, order);
    let mut work: u128 = 0;
    for s in &scopes {
        let entries = nn.saturating_pow(s.len() as u32);
        if entries > budget.max_table_entries {
            return Err(Error::Budget(format!(
                "elimination table with {} host-vertex indices has {entries} entries, limit {}",
                s.len(),
                budget.max_table_entries
            )));
        }
        work = work.saturating_add(entries.saturating_mul(nn));
    }
    let keep_entries = nn.saturating_pow(p.keep.len() as u32);
    if keep_entries > budget.max_table_entries {
        return Err(Error::Budget(format!(
            "output table has {keep_entries} entries, limit {}",
            budget.max_table_entries
        )));
    }
    work = work.saturating_add(keep_entries);
    if work > budget.max_work {
        return Err(Error::Budget(format!("estimated work {work} exceeds limit {}", budget.max_work)));
    }

    let mut mentioned = vec![false; p.nvars];
    for f in &p.factors {
        for &v in &f.vars {
            mentioned[v] = true;
        }
    }
    let mut factors = p.factors;
    for &v in order {
        if !mentioned[v] {
            factors.push(Factor::scalar(count_scalar::<T>(n)));
            continue;
        }
        let (mine, rest): (Vec<_>, Vec<_>) = factors.into_iter().partition(|f| f.vars.contains(&v));
        factors = rest;
        factors.push(step(n, &mine, Some(v), None));
    }
    Ok(step_output(n, &factors, &p.keep))
}

fn count_scalar<T: Scalar>(n: usize) -> T {
    let mut s = T::zero();
    for _ in 0..n {
        s.add_assign(&T::one());
    }
    s
}

fn step_output<T: Scalar>(n: usize, factors: &[Factor<T>], keep: &[usize]) -> Vec<T> {
    match step(n, factors, None, Some(keep)).table.as_ref() {
        Table::Dense(v) => v.clone(),
        Table::Bits { .. } => unreachable!("steps produce dense tables"),
    }
}

struct Completion {
    factor: usize,
    /// Stride of the variable looped at this level.
    own: usize,
    /// (level, stride) for the variables assigned at earlier levels.
    rest: Vec<(usize, usize)>,
}

enum Source {
    All,
    Row { factor: usize, first: bool, level: usize },
}

struct Level {
    source: Source,
    out_stride: usize,
    completes: Vec<Completion>,
    /// Offset of this level's slots in the scratch buffer of partial indices.
    scratch: usize,
}

struct Kernel<'a, T> {
    levels: Vec<Level>,
    factors: &'a [Factor<T>],
    all: Vec<u32>,
    scratch_len: usize,
}

impl<T: Scalar> Kernel<'_, T> {
    fn candidates<'s>(&'s self, lev: &Level, xs: &[u32], all: &'s [u32]) -> &'s [u32] {
        match lev.source {
            Source::All => all,
            Source::Row { factor, first, level } => {
                let rows = self.factors[factor].rows.as_ref().expect("row source has rows");
                let list = if first { &rows.by_first } else { &rows.by_second };
                &list[xs[level] as usize]
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn run(&self, l: usize, prod: &T, out_off: usize, xs: &mut [u32], base: &mut [usize], all: &[u32], out: &mut [T]) {
        if l == self.levels.len() {
            out[out_off].add_assign(prod);
            return;
        }
        let lev = &self.levels[l];
        let k = lev.completes.len();
        for (j, c) in lev.completes.iter().enumerate() {
            base[lev.scratch + j] = c.rest.iter().map(|&(lv, s)| xs[lv] as usize * s).sum();
        }
        let last = l + 1 == self.levels.len();
        'x: for &x in self.candidates(lev, xs, all) {
            let mut p = prod.clone();
            for j in 0..k {
                let c = &lev.completes[j];
                let i = base[lev.scratch + j] + c.own * x as usize;
                match self.factors[c.factor].table.get(i) {
                    Some(v) => p = p.mul(v),
                    None => continue 'x,
                }
            }
            if p.is_zero() {
                continue;
            }
            let off = out_off + lev.out_stride * x as usize;
            if last {
                out[off].add_assign(&p);
            } else {
                xs[l] = x;
                self.run(l + 1, &p, off, xs, base, all, out);
            }
        }
    }
}

/// One elimination step: multiplies `factors` and sums out `elim`. With
/// `layout` given, the output uses exactly that variable order and the
/// loops follow it; otherwise the loop order is chosen greedily and the
/// output follows it.
fn step<T: Scalar>(n: usize, factors: &[Factor<T>], elim: Option<usize>, layout: Option<&[usize]>) -> Factor<T> {
    let mut scope: Vec<usize> = factors.iter().flat_map(|f| f.vars.iter().copied()).collect();
    scope.sort_unstable();
    scope.dedup();
    let out_vars: Vec<usize> = match layout {
        Some(l) => l.to_vec(),
        None => scope.iter().copied().filter(|&w| Some(w) != elim).collect(),
    };
    let loop_vars: Vec<usize> = match layout {
        Some(l) => {
            debug_assert!(scope.iter().all(|v| l.contains(v)), "free variable outside the layout");
            l.to_vec()
        }
        None => greedy_loop_order(factors, &scope, &out_vars),
    };
    let out_layout: Vec<usize> = loop_vars.iter().copied().filter(|v| out_vars.contains(v)).collect();
    let level_of = |v: usize| loop_vars.iter().position(|&w| w == v).expect("variable in loop");

    let mut init = T::one();
    let mut levels: Vec<Level> = loop_vars
        .iter()
        .map(|&v| {
            let out_stride = match out_layout.iter().position(|&w| w == v) {
                Some(i) => n.pow((out_layout.len() - i - 1) as u32),
                None => 0,
            };
            Level { source: Source::All, out_stride, completes: Vec::new(), scratch: 0 }
        })
        .collect();
    for (fi, f) in factors.iter().enumerate() {
        if f.vars.is_empty() {
            init = init.mul(&f.table.value(0));
            continue;
        }
        let k = f.vars.len();
        let index: Vec<(usize, usize)> =
            f.vars.iter().enumerate().map(|(i, &v)| (level_of(v), n.pow((k - i - 1) as u32))).collect();
        let last = index.iter().map(|&(lv, _)| lv).max().expect("nonempty");
        if let (Some(_), 2) = (&f.rows, k) {
            let (a, b) = (index[0].0, index[1].0);
            // iterate the later variable along the row of the earlier one
            let source = if a < b {
                Source::Row { factor: fi, first: true, level: a }
            } else {
                Source::Row { factor: fi, first: false, level: b }
            };
            if matches!(levels[last].source, Source::All) {
                levels[last].source = source;
            }
        }
        let own = index.iter().filter(|&&(lv, _)| lv == last).map(|&(_, s)| s).sum();
        let rest = index.iter().copied().filter(|&(lv, _)| lv != last).collect();
        levels[last].completes.push(Completion { factor: fi, own, rest });
    }
    let mut scratch_len = 0;
    for lev in &mut levels {
        lev.scratch = scratch_len;
        scratch_len += lev.completes.len();
    }

    let out_len = n.pow(out_layout.len() as u32);
    let mut out = vec![T::zero(); out_len];
    let kernel = Kernel { levels, factors, all: (0..n as u32).collect(), scratch_len };
    if init.is_zero() {
        // nothing to do
    } else if kernel.levels.is_empty() {
        out[0] = init;
    } else if kernel.levels[0].out_stride > 0 {
        let chunk = kernel.levels[0].out_stride;
        out.par_chunks_mut(chunk).enumerate().for_each(|(x0, slice)| {
            let mut xs = vec![0u32; kernel.levels.len()];
            run_top(&kernel, &init, x0 as u32, &mut xs, slice);
        });
    } else {
        // The first loop variable is summed out; only possible for a scalar
        // output. Partials are added in increasing order of the variable.
        debug_assert_eq!(out_len, 1);
        let partials: Vec<T> = (0..n as u32)
            .into_par_iter()
            .map(|x0| {
                let mut xs = vec![0u32; kernel.levels.len()];
                let mut slot = vec![T::zero()];
                run_top(&kernel, &init, x0, &mut xs, &mut slot);
                slot.pop().expect("one slot")
            })
            .collect();
        for v in &partials {
            out[0].add_assign(v);
        }
    }
    let rows = if out_layout.len() == 2 { sparse_rows(n, &out) } else { None };
    Factor { vars: out_layout, table: Arc::new(Table::Dense(out)), rows }
}

/// Level 0 with its variable fixed to `x0`; output offsets are relative to
/// the chunk of `x0`.
fn run_top<T: Scalar>(k: &Kernel<'_, T>, init: &T, x0: u32, xs: &mut [u32], out: &mut [T]) {
    let lev = &k.levels[0];
    xs[0] = x0;
    let mut p = init.clone();
    for c in &lev.completes {
        match k.factors[c.factor].table.get(c.own * x0 as usize) {
            Some(v) => p = p.mul(v),
            None => return,
        }
    }
    if !p.is_zero() {
        let mut base = vec![0usize; k.scratch_len];
        k.run(1, &p, 0, xs, &mut base, &k.all, out);
    }
}

/// Picks output variables first (so the outer loop can be split across
/// threads), then at each position the variable completing the most
/// factors, preferring ones reachable along a sparse row.
fn greedy_loop_order<T>(factors: &[Factor<T>], scope: &[usize], out_vars: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut left: Vec<usize> = scope.to_vec();
    while !left.is_empty() {
        let pool: Vec<usize> = if chosen.is_empty() && !out_vars.is_empty() {
            left.iter().copied().filter(|v| out_vars.contains(v)).collect()
        } else {
            left.clone()
        };
        let score = |v: usize| -> (usize, usize, usize, std::cmp::Reverse<usize>) {
            let mut completes = 0;
            let mut sparse = 0;
            let mut touches = 0;
            for f in factors {
                if !f.vars.contains(&v) {
                    continue;
                }
                touches += 1;
                if f.vars.iter().all(|w| *w == v || chosen.contains(w)) {
                    completes += 1;
                    if f.rows.is_some() && f.vars.len() == 2 {
                        sparse = 1;
                    }
                }
            }
            (sparse, completes, touches, std::cmp::Reverse(v))
        };
        let best = pool.iter().copied().max_by_key(|&v| score(v)).expect("pool is nonempty");
        chosen.push(best);
        left.retain(|&w| w != best);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_problem(n: usize, adj: &[Vec<usize>], edges: &[(usize, usize)], nvars: usize) -> Problem<i128> {
        let (t, rows) = adjacency_table::<i128>(n, adj);
        let factors = edges.iter().map(|&(u, v)| Factor::shared_binary(u, v, t.clone(), &rows)).collect();
        Problem { n, nvars, factors, keep: Vec::new() }
    }

    fn triangle_plus_pendant() -> Vec<Vec<usize>> {
        // 0-1-2 triangle with 3 hanging off 2
        vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![2]]
    }

    #[test]
    fn counts_edges_and_paths() {
        let adj = triangle_plus_pendant();
        let p = edge_problem(4, &adj, &[(0, 1)], 2);
        assert_eq!(contract(p, &[0, 1], &Budget::default()).unwrap(), vec![8]);
        // walks of length 2: sum of squared degrees
        let p = edge_problem(4, &adj, &[(0, 1), (1, 2)], 3);
        assert_eq!(contract(p, &[0, 2, 1], &Budget::default()).unwrap(), vec![4 + 4 + 9 + 1]);
    }

    #[test]
    fn keeps_output_variables_in_layout_order() {
        let adj = triangle_plus_pendant();
        let mut p = edge_problem(4, &adj, &[(0, 1), (1, 2)], 3);
        p.keep = vec![2, 0];
        let t = contract(p, &[1], &Budget::default()).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let common = adj[x].iter().filter(|z| adj[y].contains(z)).count() as i128;
                assert_eq!(t[y * 4 + x], common);
            }
        }
    }

    #[test]
    fn unmentioned_variables_count_n() {
        let p: Problem<i128> = Problem { n: 5, nvars: 2, factors: Vec::new(), keep: Vec::new() };
        assert_eq!(contract(p, &[0, 1], &Budget::default()).unwrap(), vec![25]);
    }

    #[test]
    fn pinning_slices_factors() {
        let adj = triangle_plus_pendant();
        let mut p = edge_problem(4, &adj, &[(0, 1), (1, 2)], 3);
        p.pin(1, 2);
        // paths with middle vertex 2: deg(2)^2
        assert_eq!(contract(p, &[0, 2], &Budget::default()).unwrap(), vec![9]);
    }

    #[test]
    fn budget_is_checked_before_work() {
        let adj = triangle_plus_pendant();
        let p = edge_problem(4, &adj, &[(0, 1), (1, 2), (0, 2)], 3);
        let tight = Budget { max_table_entries: 3, max_work: u128::MAX };
        assert!(matches!(contract(p, &[0, 1, 2], &tight), Err(Error::Budget(_))));
    }

    #[test]
    fn float_and_integer_agree() {
        let adj = triangle_plus_pendant();
        let (t, rows) = adjacency_table::<f64>(4, &adj);
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3)];
        let factors = edges.iter().map(|&(u, v)| Factor::shared_binary(u, v, t.clone(), &rows)).collect();
        let p = Problem { n: 4, nvars: 4, factors, keep: Vec::new() };
        let f = contract(p, &[3, 0, 1, 2], &Budget::default()).unwrap()[0];
        let i = contract(edge_problem(4, &adj, &edges, 4), &[3, 0, 1, 2], &Budget::default()).unwrap()[0];
        assert_eq!(f, i as f64);
        // triangles with a pendant: 6 labeled triangles, each closing at a vertex of degree d
        assert_eq!(i, 2 * (2 + 2 + 3));
    }
}
