//! Weighted homomorphism densities `t^α(F, g)` and partial profiles.
//!
//! A host is either sparse, `g = c√n·G` for a graph `G`, or dense, a
//! symmetric matrix `H` with entries in `[0, 1]`. Every pattern vertex `v`
//! carries a weight `α_v : V → [0, 1]` and is integrated against the
//! uniform probability measure, so
//!
//! `t^α(F, g) = n^{-|V(F)|} Σ_φ Π_{uv} g(φu, φv) Π_v α_v(φv)`.
//!
//! Exact mode returns values in `Q(√n)`; float mode uses `f64`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::surd::Surd;

pub mod brute;
pub(crate) mod dp;
pub mod order;
pub mod profile;
pub mod scalar;
pub mod symmetric;

pub use brute::{hom_brute, hom_brute_with_limit, BRUTE_NODE_LIMIT};
pub use dp::Budget;
pub use order::{elimination_order, EliminationOrder};
pub use profile::{truncate_profile, Profile, ProfileValues};

use dp::{Factor, Problem};
use scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Exact(Surd),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(s) => s.to_f64(),
            Value::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Surd> {
        match self {
            Value::Exact(s) => Some(s),
            Value::Float(_) => None,
        }
    }
}

/// Weight of a single pattern vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    One,
    Indicator(Vec<bool>),
    Values(Vec<f64>),
}

impl Weight {
    pub fn at(&self, x: usize) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Indicator(s) => f64::from(u8::from(s[x])),
            Weight::Values(v) => v[x],
        }
    }

    fn is_zero_one(&self) -> bool {
        match self {
            Weight::One | Weight::Indicator(_) => true,
            Weight::Values(v) => v.iter().all(|&x| x == 0.0 || x == 1.0),
        }
    }

    /// The single supporting host vertex, if there is exactly one.
    fn singleton(&self, n: usize) -> Option<usize> {
        if matches!(self, Weight::One) {
            return (n == 1).then_some(0);
        }
        let mut it = (0..n).filter(|&x| self.at(x) != 0.0);
        match (it.next(), it.next()) {
            (Some(x), None) => Some(x),
            _ => None,
        }
    }
}

/// One weight per pattern vertex, each a function on the `n` host vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexWeights {
    n: usize,
    weights: Vec<Weight>,
}

impl VertexWeights {
    /// The constant-1 weight on `k` pattern vertices.
    pub fn ones(k: usize, n: usize) -> Self {
        VertexWeights { n, weights: vec![Weight::One; k] }
    }

    /// Indicator weights of the host vertex sets `sets[v]`.
    pub fn indicators(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut weights = Vec::with_capacity(sets.len());
        for s in sets {
            let mut ind = vec![false; n];
            for &x in s {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
                ind[x] = true;
            }
            weights.push(Weight::Indicator(ind));
        }
        Ok(VertexWeights { n, weights })
    }

    pub fn from_weights(n: usize, weights: Vec<Weight>) -> Result<Self> {
        for w in &weights {
            match w {
                Weight::One => {}
                Weight::Indicator(s) if s.len() == n => {}
                Weight::Values(v) if v.len() == n => {
                    if let Some(x) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                        return Err(Error::InvalidArgument(format!("weight {x} outside [0, 1]")));
                    }
                }
                _ => return Err(Error::InvalidArgument(format!("weights must have length {n}"))),
            }
        }
        Ok(VertexWeights { n, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn host_size(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize) -> &Weight {
        &self.weights[v]
    }

    pub fn set(&mut self, v: usize, w: Weight) -> Result<()> {
        let mut all = self.weights.clone();
        all[v] = w;
        *self = Self::from_weights(self.n, all)?;
        Ok(())
    }
}

/// Symmetric `n × n` matrix with entries in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedHost {
    n: usize,
    values: Vec<f64>,
}

impl WeightedHost {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::InvalidArgument(format!("expected {} entries, got {}", n * n, values.len())));
        }
        for x in 0..n {
            for y in 0..n {
                let v = values[x * n + y];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidArgument(format!("entry ({x}, {y}) = {v} outside [0, 1]")));
                }
                if v != values[y * n + x] {
                    return Err(Error::InvalidArgument(format!("matrix is not symmetric at ({x}, {y})")));
                }
            }
        }
        Ok(WeightedHost { n, values })
    }

    pub fn constant(n: usize, v: f64) -> Result<Self> {
        Self::new(n, vec![v; n * n])
    }

    /// The 0/1 adjacency matrix of `g` (loops on the diagonal).
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let values = g.adjacency_matrix().into_iter().map(f64::from).collect();
        WeightedHost { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[x * self.n + y]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / (self.n * self.n).max(1) as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScaledHost {
    /// `g = c√n·G`.
    Sparse { graph: Graph, c: f64 },
    Dense(WeightedHost),
}

impl ScaledHost {
    /// Sparse host with `0 < c ≤ 1/2` and maximum degree at most `2√n`,
    /// which together give `∫ g(x, y) dy ≤ 1`.
    pub fn sparse(graph: Graph, c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 0.5) {
            return Err(Error::InvalidArgument(format!("scale c = {c} outside (0, 1/2]")));
        }
        let d = graph.max_degree();
        if d * d > 4 * graph.n() {
            return Err(Error::Precondition(format!(
                "maximum degree {d} exceeds 2√n for n = {}",
                graph.n()
            )));
        }
        Ok(ScaledHost::Sparse { graph, c })
    }

    /// Sparse host without the degree and range checks; `c` only has to be
    /// positive and finite.
    pub fn sparse_unchecked(graph: Graph, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale c = {c} must be positive")));
        }
        Ok(ScaledHost::Sparse { graph, c })
    }

    pub fn dense(h: WeightedHost) -> Self {
        ScaledHost::Dense(h)
    }

    pub fn n(&self) -> usize {
        match self {
            ScaledHost::Sparse { graph, .. } => graph.n(),
            ScaledHost::Dense(h) => h.n(),
        }
    }

    pub fn scale(&self) -> Option<f64> {
        match self {
            ScaledHost::Sparse { c, .. } => Some(*c),
            ScaledHost::Dense(_) => None,
        }
    }

    fn is_zero_one(&self) -> bool {
        match self {
            ScaledHost::Sparse { .. } => true,
            ScaledHost::Dense(h) => h.values.iter().all(|&x| x == 0.0 || x == 1.0),
        }
    }

    /// `(c√n)^e` exactly; 1 for dense hosts.
    pub fn edge_factor_exact(&self, e: usize) -> Surd {
        match self {
            ScaledHost::Sparse { graph, c } => {
                let c = BigRational::from_float(*c).expect("finite scale");
                let n = graph.n() as u64;
                let half = BigRational::from_integer(BigInt::from(n).pow((e / 2) as u32));
                let base = Surd::rational(half * num_traits::pow(c, e));
                if e % 2 == 1 {
                    base.mul(&Surd::sqrt_of(n))
                } else {
                    base
                }
            }
            ScaledHost::Dense(_) => Surd::one(),
        }
    }

    pub fn edge_factor_f64(&self, e: usize) -> f64 {
        match self {
            ScaledHost::Sparse { graph, c } => (c * (graph.n() as f64).sqrt()).powi(e as i32),
            ScaledHost::Dense(_) => 1.0,
        }
    }
}

/// Density with its unnormalized count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomResult {
    pub mode: Mode,
    /// `Σ_φ Π H(φu, φv) Π α_v(φv)`, with `H = G` for sparse hosts. For 0/1
    /// weights and a sparse host this is the restricted count `hom_A(F, G)`.
    pub raw: Value,
    /// `t^α(F, host) = raw · (c√n)^{|E(F)|} / n^{|V(F)|}`, without the edge
    /// factor for dense hosts.
    pub value: Value,
    pub pattern_vertices: usize,
    pub pattern_edges: usize,
    pub n: usize,
    pub scale: Option<f64>,
}

impl HomResult {
    /// `raw / n^{|V(F)| − |E(F)|/2}`, the normalized count.
    pub fn normalized_count(&self) -> f64 {
        let n = self.n as f64;
        self.raw.to_f64() / n.powf(self.pattern_vertices as f64 - self.pattern_edges as f64 / 2.0)
    }
}

pub fn hom_weighted(f: &Graph, host: &ScaledHost, alpha: &VertexWeights, mode: Mode) -> Result<HomResult> {
    hom_weighted_with_budget(f, host, alpha, mode, &Budget::default())
}

pub fn hom_weighted_with_budget(
    f: &Graph,
    host: &ScaledHost,
    alpha: &VertexWeights,
    mode: Mode,
    budget: &Budget,
) -> Result<HomResult> {
    let table = run(f, &[], host, alpha, mode, budget)?;
    let raw = match table {
        Table::Exact(mut v) => Value::Exact(v.pop().expect("scalar result")),
        Table::Float(v) => Value::Float(v[0]),
    };
    let n = host.n();
    let (k, e) = (f.n(), f.m());
    let value = match &raw {
        Value::Exact(r) => Value::Exact(r.mul(&host.edge_factor_exact(e)).scale(&inv_pow(n, k))),
        Value::Float(r) => Value::Float(r * host.edge_factor_f64(e) / (n as f64).powi(k as i32)),
    };
    Ok(HomResult { mode, raw, value, pattern_vertices: k, pattern_edges: e, n, scale: host.scale() })
}

/// `g^α_{F,S}(x_S) = ∫ g_F(x_F) d^α x_{F∖S}` for every `x_S ∈ V^S`, row-major
/// in the order of `s`. Weights on the vertices of `S` are ignored.
pub fn partial_profile(
    f: &Graph,
    s: &[usize],
    host: &ScaledHost,
    alpha: &VertexWeights,
    mode: Mode,
) -> Result<Profile> {
    partial_profile_with_budget(f, s, host, alpha, mode, &Budget::default())
}

pub fn partial_profile_with_budget(
    f: &Graph,
    s: &[usize],
    host: &ScaledHost,
    alpha: &VertexWeights,
    mode: Mode,
    budget: &Budget,
) -> Result<Profile> {
    if s.len() > 3 {
        return Err(Error::InvalidArgument(format!("profiles fix at most 3 vertices, got {}", s.len())));
    }
    for (i, &v) in s.iter().enumerate() {
        if v >= f.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: f.n() });
        }
        if s[..i].contains(&v) {
            return Err(Error::InvalidArgument(format!("vertex {v} listed twice")));
        }
    }
    let mut alpha = alpha.clone();
    for &v in s {
        if v < alpha.len() {
            alpha.weights[v] = Weight::One;
        }
    }
    let n = host.n();
    let free = f.n() - s.len();
    let values = match run(f, s, host, &alpha, mode, budget)? {
        Table::Exact(v) => {
            let k = host.edge_factor_exact(f.m()).scale(&inv_pow(n, free));
            ProfileValues::Exact(v.iter().map(|x| x.mul(&k)).collect())
        }
        Table::Float(v) => {
            let k = host.edge_factor_f64(f.m()) / (n as f64).powi(free as i32);
            ProfileValues::Float(v.iter().map(|x| x * k).collect())
        }
    };
    Ok(Profile { s: s.to_vec(), n, values })
}

fn inv_pow(n: usize, k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n).pow(k as u32))
}

enum Table {
    Exact(Vec<Surd>),
    Float(Vec<f64>),
}

fn validate(f: &Graph, host: &ScaledHost, alpha: &VertexWeights) -> Result<()> {
    if f.has_loops() {
        return Err(Error::InvalidArgument("pattern graphs must be loop-free".into()));
    }
    if alpha.len() != f.n() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for a pattern on {} vertices",
            alpha.len(),
            f.n()
        )));
    }
    if alpha.host_size() != host.n() {
        return Err(Error::InvalidArgument(format!(
            "weights are over {} host vertices, host has {}",
            alpha.host_size(),
            host.n()
        )));
    }
    Ok(())
}

/// Raw table over `keep` (unscaled).
fn run(f: &Graph, keep: &[usize], host: &ScaledHost, alpha: &VertexWeights, mode: Mode, budget: &Budget) -> Result<Table> {
    validate(f, host, alpha)?;
    match mode {
        Mode::Float => Ok(Table::Float(run_with::<f64>(f, keep, host, alpha, budget, |x| x)?)),
        Mode::Exact => {
            let integral = host.is_zero_one() && alpha.weights.iter().all(Weight::is_zero_one);
            if integral {
                if let Some(t) = count_integral(f, keep, host, alpha, &[], budget)? {
                    return Ok(Table::Exact(t.into_iter().map(Surd::integer).collect()));
                }
            }
            let t = run_with::<Surd>(f, keep, host, alpha, budget, |x| {
                Surd::rational(BigRational::from_float(x).expect("weights are finite"))
            })?;
            Ok(Table::Exact(t))
        }
    }
}

/// Integer counting for 0/1 inputs: `i64` first, `i128` when that
/// saturates; `None` when both do.
pub(crate) fn count_integral(
    f: &Graph,
    keep: &[usize],
    host: &ScaledHost,
    alpha: &VertexWeights,
    pins: &[(usize, usize)],
    budget: &Budget,
) -> Result<Option<Vec<i128>>> {
    let (p, order) = build_problem(f, keep, host, alpha, pins, &|x| i64::from(x != 0.0))?;
    let t = dp::contract(p, &order, budget)?;
    if t.iter().all(|&x| x != i64::MAX) {
        return Ok(Some(t.into_iter().map(i128::from).collect()));
    }
    let (p, order) = build_problem(f, keep, host, alpha, pins, &|x| i128::from(x != 0.0))?;
    let t = dp::contract(p, &order, budget)?;
    Ok(t.iter().all(|&x| x != i128::MAX).then_some(t))
}

pub(crate) fn run_with<T: Scalar>(
    f: &Graph,
    keep: &[usize],
    host: &ScaledHost,
    alpha: &VertexWeights,
    budget: &Budget,
    conv: impl Fn(f64) -> T,
) -> Result<Vec<T>> {
    let (problem, order) = build_problem(f, keep, host, alpha, &[], &conv)?;
    dp::contract(problem, &order, budget)
}

/// Sets up factors for `f` on `host`, pins the vertices listed in `pins`
/// (and any vertex whose weight has a single supporting host vertex) and
/// picks an elimination order for the rest.
pub(crate) fn build_problem<T: Scalar>(
    f: &Graph,
    keep: &[usize],
    host: &ScaledHost,
    alpha: &VertexWeights,
    pins: &[(usize, usize)],
    conv: &impl Fn(f64) -> T,
) -> Result<(Problem<T>, Vec<usize>)> {
    let n = host.n();
    let (table, rows) = match host {
        ScaledHost::Sparse { graph, .. } => {
            let adj: Vec<Vec<usize>> = (0..n).map(|x| graph.neighbors(x).to_vec()).collect();
            let (t, r) = dp::adjacency_table::<T>(n, &adj);
            (t, Some(r))
        }
        ScaledHost::Dense(h) => dp::dense_symmetric_table(n, h.values.iter().map(|&x| conv(x)).collect()),
    };
    let mut factors: Vec<Factor<T>> = Vec::new();
    for &(u, v) in f.edges() {
        factors.push(match &rows {
            Some(r) => Factor::shared_binary(u, v, Arc::clone(&table), r),
            None => Factor { vars: vec![u, v], table: Arc::clone(&table), rows: None },
        });
    }
    let mut pinned: Vec<Option<usize>> = vec![None; f.n()];
    for v in 0..f.n() {
        let w = &alpha.weights[v];
        if !matches!(w, Weight::One) {
            factors.push(Factor::unary(v, (0..n).map(|x| conv(w.at(x))).collect()));
        }
        if !keep.contains(&v) {
            pinned[v] = w.singleton(n);
        }
    }
    for &(v, x) in pins {
        if keep.contains(&v) || x >= n {
            return Err(Error::InvalidArgument(format!("cannot pin vertex {v} to {x}")));
        }
        pinned[v] = Some(x);
    }
    let mut problem = Problem { n, nvars: f.n(), factors, keep: keep.to_vec() };
    for (v, p) in pinned.iter().enumerate() {
        if let Some(x) = p {
            problem.pin(v, *x);
        }
    }
    let aux = f.filter_edges(|u, v| pinned[u].is_none() && pinned[v].is_none());
    let eliminable: Vec<bool> = (0..f.n()).map(|v| pinned[v].is_none() && !keep.contains(&v)).collect();
    let order = order::elimination_order_with_tail(&aux, &eliminable).order;
    Ok((problem, order))
}
