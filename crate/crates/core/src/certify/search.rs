//! Certificate search.
//!
//! Tameness: backtracking over the reverse rules (delete a leaf, delete two
//! adjacent degree-2 vertices lying on a 3-edge path), with leaves removed
//! greedily since a leaf deletion never hurts. Countability: leaf peeling,
//! then decompositions chosen by the set `X` of connector-interior vertices.
//! The remaining vertices split into islands (components of `F - X`) and the
//! components of `F[X]` together with their island neighbors become
//! connectors; connectors sharing two or more ends are merged.
//!
//! Results are memoized by canonical form, relabeled through the canonical
//! labeling on the way in and out. Budgets count explored nodes, so verdicts
//! do not depend on timing.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::countable::{Connector, CountableCertificate, Island};
use super::tame::{axiom_graph, TameBase, TameCertificate, TameStep, K4_SUBDIVIDED};
use crate::error::{Error, Result};
use crate::graph::canon::CANON_LIMIT;
use crate::graph::{canonical_form, canonical_labeling, generators, glue, isomorphism, CanonicalForm, Graph, RootedPattern};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest pattern accepted by the searches.
pub const SEARCH_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: u64,
    pub axioms: bool,
    pub memo: bool,
    /// Seed the connector library with paths of at most 6 edges.
    pub seed_library: bool,
    /// Most entries kept per memo table; further results are not stored.
    pub memo_cap: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, axioms: true, memo: true, seed_library: true, memo_cap: None }
    }
}

#[derive(Debug)]
struct Exhausted;

type Found<C> = Option<(C, Vec<usize>)>;

/// A connector proof stored in canonical labels.
#[derive(Clone, Debug)]
struct ConnectorProof {
    cert: CountableCertificate,
    /// certificate vertex -> canonical position
    to_canon: Vec<usize>,
    glue_tame: TameCertificate,
}

/// Shared search state: memo tables, connector library and node counter.
pub struct Engine {
    cfg: SearchConfig,
    nodes: u64,
    exhausted: bool,
    tame_memo: HashMap<CanonicalForm, Found<TameCertificate>>,
    tame_dead: HashSet<CanonicalForm>,
    countable_memo: HashMap<CanonicalForm, Found<CountableCertificate>>,
    connectors: HashMap<CanonicalForm, Option<ConnectorProof>>,
    axiom_forms: Vec<(String, CanonicalForm, Graph)>,
}

/// Relabels `map` (certificate vertex -> vertex of `g`) into canonical
/// positions of `g`.
fn into_canon(map: &[usize], lab: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; lab.len()];
    for (p, &v) in lab.iter().enumerate() {
        pos[v] = p;
    }
    map.iter().map(|&v| pos[v]).collect()
}

fn out_of_canon(to_canon: &[usize], lab: &[usize]) -> Vec<usize> {
    to_canon.iter().map(|&p| lab[p]).collect()
}

enum Deletion {
    Leaf { v: usize, parent: usize },
    Path { a: usize, b: usize, u: usize, v: usize },
}

impl Engine {
    pub fn new(cfg: SearchConfig) -> Self {
        let axiom_forms = [K4_SUBDIVIDED]
            .iter()
            .map(|&name| {
                let g = axiom_graph(name).expect("built-in axiom");
                (name.to_string(), canonical_form(&g, None).expect("small axiom"), g)
            })
            .collect();
        let mut e = Engine {
            cfg,
            nodes: 0,
            exhausted: false,
            tame_memo: HashMap::new(),
            tame_dead: HashSet::new(),
            countable_memo: HashMap::new(),
            connectors: HashMap::new(),
            axiom_forms,
        };
        if e.cfg.seed_library {
            e.seed_paths();
        }
        e
    }

    fn memo_room(&self, len: usize) -> bool {
        self.cfg.memo && self.cfg.memo_cap.is_none_or(|cap| len < cap)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// Number of connector classes proven so far.
    pub fn library_size(&self) -> usize {
        self.connectors.values().filter(|p| p.is_some()).count()
    }

    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        if self.nodes >= self.cfg.budget {
            self.exhausted = true;
            return Err(Exhausted);
        }
        self.nodes += 1;
        Ok(())
    }

    /// Paths of at most 6 edges with every independent end set of size at
    /// most 3. Seeding does not count against the budget.
    fn seed_paths(&mut self) {
        let saved = (self.cfg.budget, self.nodes);
        self.cfg.budget = u64::MAX;
        for k in 1..=6 {
            let p = generators::path(k + 1);
            let n = p.n();
            for mask in 1u32..(1 << n) {
                let ends: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if ends.len() > 3 || ends.windows(2).any(|w| w[1] == w[0] + 1) {
                    continue;
                }
                let _ = self.connector(&p, &ends);
            }
        }
        self.exhausted = false;
        (self.cfg.budget, self.nodes) = saved;
    }

    // ---- tameness ----

    /// Tame certificate for `g` with its map (certificate vertex -> vertex of
    /// `g`), `None` if the search fails.
    fn tame(&mut self, g: &Graph) -> std::result::Result<Found<TameCertificate>, Exhausted> {
        let (form, lab) = canonical_labeling(g, None).expect("bounded size");
        if self.cfg.memo {
            if let Some(hit) = self.tame_memo.get(&form) {
                return Ok(hit.as_ref().map(|(c, to)| (c.clone(), out_of_canon(to, &lab))));
            }
        }
        let mut alive = vec![true; g.n()];
        let mut trail = Vec::new();
        let found = self.tame_rec(g, &mut alive, &mut trail)?;
        let forward: Vec<&Deletion> = trail.iter().rev().collect();
        let result = found.map(|(base, base_map)| build_tame(base, base_map, &forward));
        if self.memo_room(self.tame_memo.len()) {
            self.tame_memo.insert(form, result.as_ref().map(|(c, m)| (c.clone(), into_canon(m, &lab))));
        }
        Ok(result)
    }

    /// On success `trail` holds the deletions, first deletion first, and the
    /// result is the base with its map.
    fn tame_rec(
        &mut self,
        g: &Graph,
        alive: &mut [bool],
        trail: &mut Vec<Deletion>,
    ) -> std::result::Result<Option<(TameBase, Vec<usize>)>, Exhausted> {
        let mark = trail.len();
        let deg = |alive: &[bool], v: usize| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        // greedy leaf removal
        loop {
            let leaf = (0..g.n()).find(|&v| alive[v] && deg(alive, v) == 1);
            let Some(v) = leaf else { break };
            let parent = *g.neighbors(v).iter().find(|&&w| alive[w]).expect("degree one");
            alive[v] = false;
            trail.push(Deletion::Leaf { v, parent });
        }
        let restore = |alive: &mut [bool], trail: &mut Vec<Deletion>| {
            for d in trail.drain(mark..) {
                match d {
                    Deletion::Leaf { v, .. } => alive[v] = true,
                    Deletion::Path { a, b, .. } => {
                        alive[a] = true;
                        alive[b] = true;
                    }
                }
            }
        };
        let left: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        let core: Vec<usize> = left.iter().copied().filter(|&v| deg(alive, v) > 0).collect();
        if core.is_empty() {
            return Ok(Some((TameBase::Edgeless { vertices: left.len() }, left)));
        }
        let h = g.induced(&core);
        let form = canonical_form(&h, None).expect("bounded size");
        if self.cfg.axioms {
            for (name, af, ag) in &self.axiom_forms {
                if *af == form {
                    let iso = isomorphism(ag, None, &h, None).expect("bounded").expect("same form");
                    let mut map: Vec<usize> = iso.iter().map(|&i| core[i]).collect();
                    map.extend(left.iter().copied().filter(|v| !core.contains(v)));
                    let base = TameBase::Axiom { name: name.clone(), isolated: left.len() - core.len() };
                    return Ok(Some((base, map)));
                }
            }
        }
        if self.cfg.memo && self.tame_dead.contains(&form) {
            restore(alive, trail);
            return Ok(None);
        }
        if let Err(e) = self.tick() {
            restore(alive, trail);
            return Err(e);
        }
        for &(a, b) in h.edges() {
            let (a, b) = (core[a], core[b]);
            if deg(alive, a) != 2 || deg(alive, b) != 2 {
                continue;
            }
            let u = *g.neighbors(a).iter().find(|&&w| alive[w] && w != b).expect("degree two");
            let v = *g.neighbors(b).iter().find(|&&w| alive[w] && w != a).expect("degree two");
            alive[a] = false;
            alive[b] = false;
            trail.push(Deletion::Path { a, b, u, v });
            match self.tame_rec(g, alive, trail) {
                Ok(Some(found)) => return Ok(Some(found)),
                Ok(None) => {
                    trail.pop();
                    alive[a] = true;
                    alive[b] = true;
                }
                Err(e) => {
                    restore(alive, trail);
                    return Err(e);
                }
            }
        }
        if self.memo_room(self.tame_dead.len()) {
            self.tame_dead.insert(form);
        }
        restore(alive, trail);
        Ok(None)
    }

    // ---- countability ----

    /// Countable certificate for `g` with its map, `None` if the search
    /// fails or `g` has a short cycle.
    fn countable(&mut self, g: &Graph) -> std::result::Result<Found<CountableCertificate>, Exhausted> {
        if g.m() == 0 {
            return Ok(Some((CountableCertificate::Edgeless { vertices: g.n() }, (0..g.n()).collect())));
        }
        let (form, lab) = canonical_labeling(g, None).expect("bounded size");
        if self.cfg.memo {
            if let Some(hit) = self.countable_memo.get(&form) {
                return Ok(hit.as_ref().map(|(c, to)| (c.clone(), out_of_canon(to, &lab))));
            }
        }
        let result = self.countable_fresh(g)?;
        if self.memo_room(self.countable_memo.len()) {
            self.countable_memo.insert(form, result.as_ref().map(|(c, m)| (c.clone(), into_canon(m, &lab))));
        }
        Ok(result)
    }

    fn countable_fresh(&mut self, g: &Graph) -> std::result::Result<Found<CountableCertificate>, Exhausted> {
        if crate::graph::predicates::girth(g).expect("loop-free").at_most(4) {
            return Ok(None);
        }
        // peel leaves, remembering (leaf, parent)
        let mut alive = vec![true; g.n()];
        let mut peeled = Vec::new();
        loop {
            let leaf = (0..g.n())
                .find(|&v| alive[v] && g.neighbors(v).iter().filter(|&&w| alive[w]).count() == 1);
            let Some(v) = leaf else { break };
            let p = *g.neighbors(v).iter().find(|&&w| alive[w]).expect("degree one");
            alive[v] = false;
            peeled.push((v, p));
        }
        let core: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        let h = g.induced(&core);
        let (mut cert, local) = if h.m() == 0 {
            (CountableCertificate::Edgeless { vertices: h.n() }, (0..h.n()).collect::<Vec<_>>())
        } else if peeled.is_empty() {
            match self.islands_bridges(&h)? {
                Some(found) => found,
                None => return Ok(None),
            }
        } else {
            match self.countable(&h)? {
                Some(found) => found,
                None => return Ok(None),
            }
        };
        let mut map: Vec<usize> = local.iter().map(|&i| core[i]).collect();
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        for &(v, p) in peeled.iter().rev() {
            cert = CountableCertificate::Pendant { parent: Box::new(cert), attach: index[p] };
            index[v] = map.len();
            map.push(v);
        }
        Ok(Some((cert, map)))
    }

    /// Whether `(j, ends)` is a connector, with a proof.
    fn connector(&mut self, j: &Graph, ends: &[usize]) -> std::result::Result<Option<ConnectorProof>, Exhausted> {
        let (form, lab) = canonical_labeling(j, Some(ends)).expect("bounded size");
        if let Some(hit) = self.connectors.get(&form) {
            return Ok(hit.clone());
        }
        let glued = glue(&RootedPattern::new(j.clone(), ends.iter().copied()).expect("independent ends"));
        let proof = if glued.n() > CANON_LIMIT {
            None
        } else {
            match self.tame(&glued)? {
                None => None,
                Some((glue_tame, _)) => self
                    .countable(j)?
                    .map(|(cert, map)| ConnectorProof { cert, to_canon: into_canon(&map, &lab), glue_tame }),
            }
        };
        self.connectors.insert(form, proof.clone());
        Ok(proof)
    }

    /// Decomposition search on a graph without leaves.
    fn islands_bridges(&mut self, f: &Graph) -> std::result::Result<Found<CountableCertificate>, Exhausted> {
        let n = f.n();
        if !f.is_connected() {
            self.tick()?;
            if let Some(found) = self.try_interior(f, &[])? {
                return Ok(Some(found));
            }
        }
        let deg2: Vec<usize> = (0..n).filter(|&v| f.degree(v) == 2).collect();
        for k in 1..=deg2.len() {
            let mut found = None;
            for_each_subset(&deg2, k, &mut |x| {
                self.tick()?;
                found = self.try_interior(f, x)?;
                Ok(found.is_some())
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        let all: Vec<usize> = (0..n).collect();
        for k in 1..n {
            let mut found = None;
            for_each_subset(&all, k, &mut |x| {
                if x.iter().all(|&v| f.degree(v) == 2) {
                    return Ok(false);
                }
                self.tick()?;
                found = self.try_interior(f, x)?;
                Ok(found.is_some())
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Tries the decomposition whose connector interiors are `x`.
    fn try_interior(&mut self, f: &Graph, x: &[usize]) -> std::result::Result<Found<CountableCertificate>, Exhausted> {
        let n = f.n();
        let mut in_x = vec![false; n];
        for &v in x {
            in_x[v] = true;
        }
        let u: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
        if u.is_empty() {
            return Ok(None);
        }
        // islands: components of F - X
        let islands: Vec<Vec<usize>> =
            f.induced(&u).components().into_iter().map(|c| c.into_iter().map(|i| u[i]).collect()).collect();
        let mut island_of = vec![usize::MAX; n];
        for (i, isl) in islands.iter().enumerate() {
            for &v in isl {
                island_of[v] = i;
            }
        }
        // pieces: components of F[X] with their island neighbours
        let mut pieces: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for comp in f.induced(x).components() {
            let inner: Vec<usize> = comp.into_iter().map(|i| x[i]).collect();
            let mut ends: Vec<usize> =
                inner.iter().flat_map(|&v| f.neighbors(v).iter().copied()).filter(|&w| !in_x[w]).collect();
            ends.sort_unstable();
            ends.dedup();
            if ends.is_empty() {
                return Ok(None);
            }
            pieces.push((inner, ends));
        }
        // merge pieces sharing two or more ends
        loop {
            let mut merged = false;
            'outer: for a in 0..pieces.len() {
                for b in a + 1..pieces.len() {
                    let shared = pieces[a].1.iter().filter(|e| pieces[b].1.contains(e)).count();
                    if shared >= 2 {
                        let (inner, ends) = pieces.remove(b);
                        pieces[a].0.extend(inner);
                        pieces[a].1.extend(ends);
                        pieces[a].1.sort_unstable();
                        pieces[a].1.dedup();
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        // (c): one end per island
        for (_, ends) in &pieces {
            let mut hit = HashSet::new();
            if !ends.iter().all(|&e| hit.insert(island_of[e])) {
                return Ok(None);
            }
        }
        let smaller = |m: usize, k: usize| m < f.m() || (m == f.m() && k < n);
        // connectors
        let mut connectors = Vec::new();
        for (inner, ends) in &pieces {
            let mut verts: Vec<usize> = inner.iter().chain(ends).copied().collect();
            verts.sort_unstable();
            let pos = |v: usize| verts.binary_search(&v).expect("piece vertex");
            let edges: Vec<(usize, usize)> = f
                .edges()
                .iter()
                .filter(|&&(a, b)| (in_x[a] && inner.contains(&a)) || (in_x[b] && inner.contains(&b)))
                .map(|&(a, b)| (pos(a), pos(b)))
                .collect();
            if !smaller(edges.len(), verts.len()) {
                return Ok(None);
            }
            let j = Graph::new(verts.len(), edges).expect("subgraph");
            let local_ends: Vec<usize> = ends.iter().map(|&e| pos(e)).collect();
            let (_, lab) = canonical_labeling(&j, Some(&local_ends)).expect("bounded size");
            let Some(proof) = self.connector(&j, &local_ends)? else { return Ok(None) };
            let map: Vec<usize> = out_of_canon(&proof.to_canon, &lab).into_iter().map(|i| verts[i]).collect();
            let cert_ends: Vec<usize> = {
                let mut e: Vec<usize> = (0..map.len()).filter(|&i| !in_x[map[i]]).collect();
                e.sort_unstable();
                e
            };
            connectors.push(Connector { map, ends: cert_ends, cert: proof.cert, glue_tame: proof.glue_tame });
        }
        // islands: all tame but at most one, which goes last
        let mut tame_parts = Vec::new();
        let mut wild = None;
        for isl in &islands {
            let g = f.induced(isl);
            if !smaller(g.m(), g.n()) {
                return Ok(None);
            }
            match self.tame(&g)? {
                Some((t, _)) => tame_parts.push((isl, g, Some(t))),
                None if wild.is_none() => wild = Some((isl, g, None)),
                None => return Ok(None),
            }
        }
        let mut out = Vec::new();
        for (isl, g, t) in tame_parts.into_iter().chain(wild) {
            let Some((cert, map)) = self.countable(&g)? else { return Ok(None) };
            out.push(Island { map: map.iter().map(|&i| isl[i]).collect(), cert, tame: t });
        }
        let cert = CountableCertificate::IslandsBridges { vertices: n, islands: out, connectors };
        Ok(Some((cert, (0..n).collect())))
    }
}

/// Calls `visit` on every `k`-subset of `items` in lexicographic order
/// until it returns `true`.
fn for_each_subset(
    items: &[usize],
    k: usize,
    visit: &mut dyn FnMut(&[usize]) -> std::result::Result<bool, Exhausted>,
) -> std::result::Result<(), Exhausted> {
    if k > items.len() {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut cur: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if visit(&cur)? {
            return Ok(());
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == items.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(());
        }
        i -= 1;
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
        for t in i..k {
            cur[t] = items[idx[t]];
        }
    }
}

fn build_tame(base: TameBase, base_map: Vec<usize>, forward: &[&Deletion]) -> (TameCertificate, Vec<usize>) {
    let mut map = base_map;
    let mut index: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut steps = Vec::new();
    for d in forward {
        match **d {
            Deletion::Leaf { v, parent } => {
                steps.push(TameStep::PendantEdge { attach_to: index[&parent] });
                index.insert(v, map.len());
                map.push(v);
            }
            Deletion::Path { a, b, u, v } => {
                steps.push(TameStep::ThreePath { u: index[&u], v: index[&v] });
                index.insert(a, map.len());
                map.push(a);
                index.insert(b, map.len());
                map.push(b);
            }
        }
    }
    (TameCertificate { base, steps }, map)
}

// ---- public entry points ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    RefutedGirth,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TameVerdict {
    pub status: Status,
    pub certificate: Option<TameCertificate>,
    /// certificate vertex -> target vertex
    pub map: Option<Vec<usize>>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjecturalFlags {
    pub two_density: crate::graph::density::ScreenResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<CountableCertificate>,
    pub map: Option<Vec<usize>>,
    /// A cycle of length at most 4 when refuted.
    pub witness: Option<Vec<usize>>,
    pub conjectural_flags: ConjecturalFlags,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

fn check_size(f: &Graph) -> Result<()> {
    if f.has_loops() {
        return Err(Error::InvalidArgument("patterns must be loop-free".into()));
    }
    if f.n() > SEARCH_LIMIT {
        return Err(Error::TooLarge { n: f.n(), limit: SEARCH_LIMIT });
    }
    Ok(())
}

pub fn search_tame(f: &Graph, cfg: &SearchConfig) -> Result<TameVerdict> {
    check_size(f)?;
    let mut engine = Engine::new(SearchConfig { seed_library: false, ..cfg.clone() });
    engine.search_tame(f)
}

pub fn search_countable(f: &Graph, cfg: &SearchConfig) -> Result<Verdict> {
    check_size(f)?;
    Engine::new(cfg.clone()).search_countable(f)
}

impl Engine {
    /// Tame search reusing this engine's memo tables; the node counter is
    /// reset per call.
    pub fn search_tame(&mut self, f: &Graph) -> Result<TameVerdict> {
        check_size(f)?;
        self.nodes = 0;
        self.exhausted = false;
        let r = self.tame(f);
        let (status, certificate, map) = match r {
            Ok(Some((c, m))) => (Status::Certified, Some(c), Some(m)),
            _ => (Status::Unknown, None, None),
        };
        Ok(TameVerdict { status, certificate, map, nodes: self.nodes, budget_exhausted: self.exhausted })
    }

    pub fn search_countable(&mut self, f: &Graph) -> Result<Verdict> {
        check_size(f)?;
        self.nodes = 0;
        self.exhausted = false;
        let flags = ConjecturalFlags { two_density: crate::graph::density::two_density_screen(f) };
        let cycle = crate::graph::predicates::shortest_cycle(f)?;
        if let Some(c) = cycle.filter(|c| c.len() <= 4) {
            return Ok(Verdict {
                status: Status::RefutedGirth,
                certificate: None,
                map: None,
                witness: Some(c),
                conjectural_flags: flags,
                nodes: 0,
                budget_exhausted: false,
            });
        }
        let r = self.countable(f);
        let (status, certificate, map) = match r {
            Ok(Some((c, m))) => (Status::Certified, Some(c), Some(m)),
            _ => (Status::Unknown, None, None),
        };
        Ok(Verdict {
            status,
            certificate,
            map,
            witness: None,
            conjectural_flags: flags,
            nodes: self.nodes,
            budget_exhausted: self.exhausted,
        })
    }
}
