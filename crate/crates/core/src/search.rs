//! Exhaustive scans of the perturbation theorems over small connected graphs.
//!
//! Base graphs are all labelled connected graphs up to a configured order,
//! taken in edge-bitmask order (no isomorphism reduction), or an external
//! graph list. Every legal operation instance is judged with the same kernels
//! the single-instance checkers use, and the results are tallied by
//! hypothesis stratum and by the observed order of the two sides.
//!
//! The values `(λ₂, ρ)` of every labelled graph up to [`TABLE_ORDER`]
//! vertices are computed once per process and looked up by edge mask.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{bits, make_named, pair_count, pair_index, FamilyKind, Graph, NamedFamily};
use crate::perturb::{identify, subdivide_edge, subdivision_graph, transfer_candidates, transfer_edges};
use crate::spectral::{spectrum, Which};
use crate::theorems::{
    judge_identify_lambda2, judge_identify_rho, judge_subdivide_lambda2, judge_subdivide_rho, judge_transfer_state,
    transfer_state, Checker, Direction, Instance, Judgement, Operation, PreconditionState, Prepared, Relation,
    TheoremId, Tolerances, Verdict,
};

/// Largest order the native enumeration accepts.
pub const MAX_SCAN_ORDER: usize = 8;
/// Largest order with a precomputed value table.
pub const TABLE_ORDER: usize = 7;

const MASK_CHUNK: u64 = 1 << 12;
const TREE_CHUNK: u64 = 1 << 12;
const STREAM_CHUNK: usize = 64;

fn check_scan_order(n: usize) -> Result<()> {
    if (1..=MAX_SCAN_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(n))
    }
}

fn mask_adjacency(n: usize, mask: u64) -> [u64; MAX_SCAN_ORDER] {
    let mut adj = [0u64; MAX_SCAN_ORDER];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

/// Whether the vertices in `within` induce a connected subgraph.
fn connected_within(adj: &[u64], within: u64) -> bool {
    if within == 0 {
        return false;
    }
    let mut seen = 1u64 << within.trailing_zeros();
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen == within
}

fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Edge masks of the connected labelled graphs on `n` vertices, ascending.
pub fn connected_masks(n: usize) -> Result<impl Iterator<Item = u64>> {
    check_scan_order(n)?;
    let total = 1u64 << pair_count(n);
    Ok((0..total).filter(move |&m| connected_within(&mask_adjacency(n, m), full(n))))
}

/// All connected labelled graphs on `n` vertices in edge-bitmask order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(connected_masks(n)?.map(move |m| Graph::from_mask(n, m).expect("order already checked")))
}

fn connected_list(n: usize) -> &'static [u64] {
    static LISTS: [OnceLock<Vec<u64>>; TABLE_ORDER + 1] = [const { OnceLock::new() }; TABLE_ORDER + 1];
    LISTS[n].get_or_init(|| connected_masks(n).expect("order within table range").collect())
}

fn direct_values(g: &Graph) -> Result<[f64; 2]> {
    let s = spectrum(g)?;
    let l2 = if g.order() >= 2 { s.values()[1] } else { f64::NAN };
    Ok([l2, s.rho()])
}

/// Orders whose table is built on first use; larger tabulated orders are only
/// consulted once a scan over base graphs of that order has built them.
const EAGER_TABLE_ORDER: usize = 6;

static TABLES: [OnceLock<Result<Vec<[f64; 2]>>>; TABLE_ORDER + 1] = [const { OnceLock::new() }; TABLE_ORDER + 1];

fn table(n: usize) -> Result<&'static [[f64; 2]]> {
    let cell = TABLES[n].get_or_init(|| {
        let total = 1usize << pair_count(n);
        (0..total)
            .into_par_iter()
            .with_min_len(1 << 10)
            .map(|m| direct_values(&Graph::from_mask(n, m as u64)?))
            .collect()
    });
    cell.as_deref().map_err(Clone::clone)
}

/// `[λ₂, ρ]` of `g`; `λ₂` is NaN for a single vertex. Every value comes from
/// a certified eigendecomposition, tabulated or not.
pub fn spectral_values(g: &Graph) -> Result<[f64; 2]> {
    let n = g.order();
    if n <= TABLE_ORDER {
        let mask = g.edge_mask().expect("small orders fit a 64-bit mask") as usize;
        if n <= EAGER_TABLE_ORDER {
            return Ok(table(n)?[mask]);
        }
        if let Some(Ok(tab)) = TABLES[n].get() {
            return Ok(tab[mask]);
        }
    }
    direct_values(g)
}

fn pick(values: [f64; 2], which: Which) -> f64 {
    match which {
        Which::SecondSmallest => values[0],
        Which::Largest => values[1],
    }
}

/// Decodes Prüfer sequence number `code` (base `n` digits) into a labelled tree.
pub fn prufer_tree(n: usize, code: u64) -> Result<Graph> {
    if n < 2 {
        return Graph::empty(n.max(1));
    }
    let mut seq = Vec::with_capacity(n - 2);
    let mut c = code;
    for _ in 0..n - 2 {
        seq.push((c % n as u64) as usize);
        c /= n as u64;
    }
    seq.reverse();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &seq {
        let leaf = (0..n).find(|&y| degree[y] == 1).expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&y| degree[y] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges)
}

fn tree_count(n: usize) -> u64 {
    if n < 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// Named graphs `P_k, C_k, K_k, S_k` for `k ≤ max`, without duplicates.
pub fn catalog(max: usize) -> Vec<(NamedFamily, Graph)> {
    let mut out: Vec<(NamedFamily, Graph)> = Vec::new();
    for kind in [FamilyKind::Path, FamilyKind::Cycle, FamilyKind::Complete, FamilyKind::Star] {
        for k in 1..=max {
            let Ok(fam) = NamedFamily::new(kind, k) else { continue };
            let g = make_named(fam).expect("validated family");
            if !out.iter().any(|(_, h)| *h == g) {
                out.push((fam, g));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Largest base-graph order, `2..=8`.
    pub n_max: usize,
    /// Largest number of moved edges per edge transfer.
    pub max_transfer: usize,
    /// Largest number of subdivided edges per subset, besides the full edge set.
    pub max_subdivide: usize,
    /// Stored witnesses per bucket.
    pub witness_cap: usize,
    /// Largest order of `G₁` in vertex identification scans.
    pub identify_split: usize,
    /// Largest `k` of the named-family catalog used for identification.
    pub catalog_max: usize,
    pub tol: Tolerances,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            n_max: 6,
            max_transfer: 2,
            max_subdivide: 2,
            witness_cap: 3,
            identify_split: 5,
            catalog_max: 5,
            tol: Tolerances::default(),
            jobs: 0,
        }
    }
}

impl ScanConfig {
    pub fn new(n_max: usize) -> Result<Self> {
        let c = ScanConfig { n_max, ..Default::default() };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_SCAN_ORDER).contains(&self.n_max) {
            return Err(Error::InvalidConfig(format!("n_max must be in 2..=8, got {}", self.n_max)));
        }
        if self.max_transfer == 0 {
            return Err(Error::InvalidConfig("max_transfer must be at least 1".into()));
        }
        if self.max_subdivide == 0 {
            return Err(Error::InvalidConfig("max_subdivide must be at least 1".into()));
        }
        Ok(())
    }
}

/// Position of an instance in the deterministic scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScanKey {
    /// 0 for the named catalog and stars, 1 for enumerated or streamed graphs.
    pub phase: u8,
    pub order: u32,
    /// Edge mask, Prüfer number or stream position of the base graph.
    pub graph: u64,
    /// Instance number within the base graph.
    pub sub: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub key: ScanKey,
    pub theorem: TheoremId,
    pub precondition: PreconditionState,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub graph6: String,
    pub params: BTreeMap<String, Value>,
}

impl Witness {
    pub fn instance(&self) -> Result<Instance> {
        Instance::from_params(self.theorem.instance_kind(), &self.graph6, &self.params)
    }

    /// Rebuilds the instance from its graph6 form and re-runs the checker,
    /// failing unless the stratum, direction and pass flag all agree.
    pub fn reverify(&self, tol: &Tolerances) -> Result<Verdict> {
        let v = Checker::new(*tol).check(self.theorem, &self.instance()?)?;
        let dir = v.direction(tol.strict_gap);
        if v.precondition != self.precondition || dir != self.direction || v.pass != self.pass {
            return Err(Error::Certification(format!(
                "witness {} {} re-checks as {:?}/{:?}/pass={} instead of {:?}/{:?}/pass={}",
                self.theorem, self.graph6, v.precondition, dir, v.pass, self.precondition, self.direction, self.pass
            )));
        }
        Ok(v)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("witnesses always serialize")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
}

impl Counts {
    pub fn total(&self) -> u64 {
        self.less + self.equal + self.greater
    }

    pub fn get(&self, d: Direction) -> u64 {
        match d {
            Direction::Less => self.less,
            Direction::Equal => self.equal,
            Direction::Greater => self.greater,
        }
    }

    fn bump(&mut self, d: Direction) {
        match d {
            Direction::Less => self.less += 1,
            Direction::Equal => self.equal += 1,
            Direction::Greater => self.greater += 1,
        }
    }

    fn add(&mut self, o: &Counts) {
        self.less += o.less;
        self.equal += o.equal;
        self.greater += o.greater;
    }
}

/// Outcome counts for one hypothesis stratum of one theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseTally {
    pub theorem: TheoremId,
    pub operation: Option<Operation>,
    pub target: Which,
    pub precondition: PreconditionState,
    /// Order of `lhs` against `rhs`, with the strict gap as the equal width.
    pub counts: Counts,
    /// Instances whose verdict did not pass.
    pub failures: u64,
    /// Up to `witness_cap` instances per direction, in scan order.
    pub witnesses: Vec<Witness>,
    /// Up to `witness_cap` failing instances, in scan order.
    pub failing: Vec<Witness>,
}

impl CaseTally {
    pub fn witnesses_in(&self, d: Direction) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.direction == d)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("tallies always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub theorem: TheoremId,
    pub config: ScanConfig,
    /// One tally per precondition stratum that occurred, in stratum order.
    pub tallies: Vec<CaseTally>,
}

impl ScanReport {
    pub fn tally(&self, pre: PreconditionState) -> Option<&CaseTally> {
        self.tallies.iter().find(|t| t.precondition == pre)
    }

    pub fn total(&self) -> u64 {
        self.tallies.iter().map(|t| t.counts.total()).sum()
    }

    pub fn failures(&self) -> u64 {
        self.tallies.iter().map(|t| t.failures).sum()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.tallies.iter().flat_map(|t| t.witnesses.iter().chain(&t.failing))
    }
}

#[derive(Debug, Default)]
struct Stratum {
    counts: Counts,
    failures: u64,
    witnesses: Vec<Witness>,
    failing: Vec<Witness>,
}

/// Tallies for one unit of work, or the first match when searching.
struct Acc {
    theorem: TheoremId,
    cfg: ScanConfig,
    strata: BTreeMap<PreconditionState, Stratum>,
    target: Option<(PreconditionState, Direction)>,
    found: Option<Witness>,
}

impl Acc {
    fn new(theorem: TheoremId, cfg: &ScanConfig, target: Option<(PreconditionState, Direction)>) -> Self {
        Acc { theorem, cfg: *cfg, strata: BTreeMap::new(), target, found: None }
    }

    fn done(&self) -> bool {
        self.found.is_some()
    }

    fn witness(&self, key: ScanKey, j: &Judgement, dir: Direction, inst: &Instance) -> Witness {
        Witness {
            key,
            theorem: self.theorem,
            precondition: j.precondition,
            direction: dir,
            lhs: j.lhs,
            rhs: j.rhs,
            pass: j.pass,
            graph6: inst.primary_graph6(),
            params: inst.params(),
        }
    }

    fn record(&mut self, key: ScanKey, j: &Judgement, inst: impl FnOnce() -> Instance) {
        let dir = j.direction(self.cfg.tol.strict_gap);
        if let Some((pre, d)) = self.target {
            if self.found.is_none() && j.precondition == pre && dir == d {
                self.found = Some(self.witness(key, j, dir, &inst()));
            }
            return;
        }
        let cap = self.cfg.witness_cap;
        let s = self.strata.entry(j.precondition).or_default();
        s.counts.bump(dir);
        if !j.pass {
            s.failures += 1;
        }
        let want_witness = s.witnesses.iter().filter(|w| w.direction == dir).count() < cap;
        let want_failing = !j.pass && s.failing.len() < cap;
        if want_witness || want_failing {
            let w = self.witness(key, j, dir, &inst());
            let s = self.strata.get_mut(&j.precondition).expect("just inserted");
            if want_failing {
                s.failing.push(w.clone());
            }
            if want_witness {
                s.witnesses.push(w);
            }
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        let cap = self.cfg.witness_cap;
        for (pre, o) in other.strata {
            let s = self.strata.entry(pre).or_default();
            s.counts.add(&o.counts);
            s.failures += o.failures;
            s.witnesses.extend(o.witnesses);
            s.failing.extend(o.failing);
            s.witnesses.sort_by_key(|w| w.key);
            s.failing.sort_by_key(|w| w.key);
            let mut per = [0usize; 3];
            s.witnesses.retain(|w| {
                let i = w.direction as usize;
                per[i] += 1;
                per[i] <= cap
            });
            s.failing.truncate(cap);
        }
        self.found = match (self.found, other.found) {
            (Some(a), Some(b)) => Some(if a.key <= b.key { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(self) -> ScanReport {
        let theorem = self.theorem;
        let tallies = self
            .strata
            .into_iter()
            .map(|(precondition, s)| CaseTally {
                theorem,
                operation: theorem.operation(),
                target: theorem.target(),
                precondition,
                counts: s.counts,
                failures: s.failures,
                witnesses: s.witnesses,
                failing: s.failing,
            })
            .collect();
        ScanReport { theorem, config: self.cfg, tallies }
    }
}

#[derive(Debug, Clone, Copy)]
enum Unit {
    Stars,
    Catalog,
    Masks { n: usize, lo: u64, hi: u64 },
    Trees { n: usize, lo: u64, hi: u64 },
    Stream { lo: usize, hi: usize },
}

fn is_identify(t: TheoremId) -> bool {
    matches!(t, TheoremId::T3_3 | TheoremId::C3_4 | TheoremId::T4_2)
}

fn units(theorem: TheoremId, cfg: &ScanConfig, stream: Option<&[Graph]>) -> Vec<Unit> {
    let mut out = Vec::new();
    if theorem == TheoremId::C2_3 {
        out.push(Unit::Stars);
        return out;
    }
    if is_identify(theorem) && stream.is_none() {
        out.push(Unit::Catalog);
    }
    if let Some(s) = stream {
        out.extend((0..s.len()).step_by(STREAM_CHUNK).map(|lo| Unit::Stream { lo, hi: (lo + STREAM_CHUNK).min(s.len()) }));
        return out;
    }
    if theorem == TheoremId::C3_5 {
        for n in 2..=cfg.n_max {
            let total = tree_count(n);
            let mut lo = 0;
            while lo < total {
                out.push(Unit::Trees { n, lo, hi: (lo + TREE_CHUNK).min(total) });
                lo += TREE_CHUNK;
            }
        }
        return out;
    }
    let top = if is_identify(theorem) { (cfg.n_max - 1).min(cfg.identify_split) } else { cfg.n_max };
    for n in 2..=top {
        let total = 1u64 << pair_count(n);
        let mut lo = 0;
        while lo < total {
            out.push(Unit::Masks { n, lo, hi: (lo + MASK_CHUNK).min(total) });
            lo += MASK_CHUNK;
        }
    }
    out
}

/// Shared state of one scan: the work list and the graph sources.
struct Scan<'a> {
    theorem: TheoremId,
    cfg: ScanConfig,
    checker: Checker,
    stream: Option<&'a [Graph]>,
}

impl Scan<'_> {
    fn run_unit(&self, unit: Unit, acc: &mut Acc) -> Result<()> {
        match unit {
            Unit::Stars => {
                for n in 3..=self.cfg.n_max.max(3) {
                    let v = self.checker.check_cor_2_3(n)?;
                    let key = ScanKey { phase: 0, order: n as u32, graph: 0, sub: 0 };
                    acc.record(key, &judgement_of(&v), || Instance::Star(n));
                }
            }
            Unit::Catalog => {
                let cat: Vec<Graph> = catalog(self.cfg.catalog_max).into_iter().map(|(_, g)| g).collect();
                for (i, g1) in cat.iter().enumerate() {
                    if g1.order() < 2 {
                        continue;
                    }
                    let key = ScanKey { phase: 0, order: 0, graph: i as u64, sub: 0 };
                    self.identify_from(g1, key, cat.iter().map(Ok::<_, Error>), acc)?;
                    if acc.done() {
                        break;
                    }
                }
            }
            Unit::Masks { n, lo, hi } => {
                for mask in lo..hi {
                    if acc.done() {
                        break;
                    }
                    if !connected_within(&mask_adjacency(n, mask), full(n)) {
                        continue;
                    }
                    let g = Graph::from_mask(n, mask)?;
                    let key = ScanKey { phase: 1, order: n as u32, graph: mask, sub: 0 };
                    self.base_graph(&g, Some(mask), key, acc)?;
                }
            }
            Unit::Trees { n, lo, hi } => {
                for code in lo..hi {
                    if acc.done() {
                        break;
                    }
                    let t = prufer_tree(n, code)?;
                    self.tree(&t, ScanKey { phase: 1, order: n as u32, graph: code, sub: 0 }, acc)?;
                }
            }
            Unit::Stream { lo, hi } => {
                let stream = self.stream.expect("stream units come with a stream");
                for (i, g) in stream.iter().enumerate().take(hi).skip(lo) {
                    if acc.done() {
                        break;
                    }
                    if g.order() < 2 || !g.is_connected() {
                        continue;
                    }
                    let key = ScanKey { phase: 1, order: g.order() as u32, graph: i as u64, sub: 0 };
                    if self.theorem == TheoremId::C3_5 {
                        if g.is_tree() {
                            self.tree(g, key, acc)?;
                        }
                    } else {
                        self.base_graph(g, g.edge_mask(), key, acc)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn base_graph(&self, g: &Graph, mask: Option<u64>, mut key: ScanKey, acc: &mut Acc) -> Result<()> {
        let tol = self.cfg.tol;
        let n = g.order();
        let next = |key: &mut ScanKey| {
            let k = *key;
            key.sub += 1;
            k
        };
        match self.theorem {
            TheoremId::L2_4 => {
                if !g.is_complete() {
                    let l2 = spectral_values(g)?[0];
                    let j = Judgement::new(PreconditionState::Unconditional, l2, 1.0, Relation::Le, false, &tol);
                    acc.record(next(&mut key), &j, || Instance::Graph(g.clone()));
                }
            }
            TheoremId::C2_2 => {
                let v = self.checker.check_cor_2_2(g)?;
                acc.record(next(&mut key), &judgement_of(&v), || Instance::Graph(g.clone()));
            }
            TheoremId::T3_1 | TheoremId::T4_1 => {
                let base = Prepared::new(g)?;
                for (u, v) in g.edges() {
                    let after = spectral_values(&subdivide_edge(g, u, v)?.result)?;
                    let j = if self.theorem == TheoremId::T3_1 {
                        judge_subdivide_lambda2(&base, u, v, after[0], &tol)
                    } else {
                        judge_subdivide_rho(&base, u, v, after[1], &tol)
                    };
                    acc.record(next(&mut key), &j, || Instance::Edge { g: g.clone(), u, v });
                    if acc.done() {
                        break;
                    }
                }
            }
            TheoremId::C3_2 => {
                let l2 = spectral_values(g)?[0];
                let edges = g.edges();
                let mut subsets = Vec::new();
                for size in 1..=self.cfg.max_subdivide.min(edges.len()) {
                    combinations(edges.len(), size, &mut |idx| subsets.push(idx.to_vec()));
                }
                if edges.len() > self.cfg.max_subdivide {
                    subsets.push((0..edges.len()).collect());
                }
                for idx in subsets {
                    let chosen: Vec<(usize, usize)> = idx.iter().map(|&i| edges[i]).collect();
                    let after = spectral_values(&subdivision_graph(g, &chosen)?.result)?[0];
                    let j = Judgement::new(PreconditionState::Unconditional, l2, after, Relation::Ge, false, &tol);
                    acc.record(next(&mut key), &j, || Instance::Subdivision { g: g.clone(), edges: chosen.clone() });
                    if acc.done() {
                        break;
                    }
                }
            }
            TheoremId::T3_6 | TheoremId::T4_3 => {
                let which = self.theorem.target();
                let base = Prepared::new(g)?;
                let tab = match mask {
                    Some(_) if n <= TABLE_ORDER => Some(table(n)?),
                    _ => None,
                };
                'pairs: for u in 0..n {
                    for v in 0..n {
                        if u == v {
                            continue;
                        }
                        let cand = transfer_candidates(g, u, v);
                        if cand == 0 {
                            continue;
                        }
                        let pre = transfer_state(&base, which, u, v, &tol);
                        for sub in 1..=cand {
                            if sub & !cand != 0 || sub.count_ones() as usize > self.cfg.max_transfer {
                                continue;
                            }
                            let after = match (tab, mask) {
                                (Some(tab), Some(m)) => {
                                    let mut m2 = m;
                                    for t in bits(sub) {
                                        m2 &= !(1 << pair_index(v, t));
                                        m2 |= 1 << pair_index(u, t);
                                    }
                                    pick(tab[m2 as usize], which)
                                }
                                _ => {
                                    let targets: Vec<usize> = bits(sub).collect();
                                    pick(spectral_values(&transfer_edges(g, u, v, &targets)?.result)?, which)
                                }
                            };
                            let j = judge_transfer_state(pre, &base, which, after, &tol);
                            acc.record(next(&mut key), &j, || Instance::Transfer {
                                g: g.clone(),
                                u,
                                v,
                                targets: bits(sub).collect(),
                            });
                            if acc.done() {
                                break 'pairs;
                            }
                        }
                    }
                }
            }
            TheoremId::T3_3 | TheoremId::C3_4 | TheoremId::T4_2 => match self.stream {
                Some(stream) => self.identify_from(g, key, stream.iter().map(Ok::<_, Error>), acc)?,
                None => {
                    let top = self.cfg.n_max + 1 - n;
                    let seconds = (1..=top).flat_map(|n2| {
                        connected_list(n2).iter().map(move |&m| Graph::from_mask(n2, m))
                    });
                    self.identify_from(g, key, seconds, acc)?;
                }
            },
            TheoremId::C2_3 | TheoremId::C3_5 => unreachable!("handled by dedicated units"),
        }
        Ok(())
    }

    /// Glues every graph of `seconds`, at every vertex, onto every vertex of `g1`.
    fn identify_from<G: std::borrow::Borrow<Graph>>(
        &self,
        g1: &Graph,
        mut key: ScanKey,
        seconds: impl Iterator<Item = Result<G>> + Clone,
        acc: &mut Acc,
    ) -> Result<()> {
        let tol = self.cfg.tol;
        let base = Prepared::new(g1)?;
        for u in 0..g1.order() {
            for g2 in seconds.clone() {
                let g2 = g2?;
                let g2 = g2.borrow();
                if !g2.is_connected() {
                    continue;
                }
                let l2_second = if g2.order() >= 2 { spectral_values(g2)?[0] } else { f64::INFINITY };
                for v in 0..g2.order() {
                    let glued = spectral_values(&identify(g1, u, g2, v)?.result)?;
                    let j = match self.theorem {
                        TheoremId::T3_3 => judge_identify_lambda2(&base, u, g2.volume(), glued[0], &tol),
                        TheoremId::T4_2 => judge_identify_rho(&base, u, glued[1], &tol),
                        _ => {
                            let rhs = base.lambda2().min(l2_second);
                            Judgement::new(PreconditionState::Unconditional, glued[0], rhs, Relation::Le, false, &tol)
                        }
                    };
                    let k = key;
                    key.sub += 1;
                    acc.record(k, &j, || Instance::Identify { g1: g1.clone(), u, g2: g2.clone(), v });
                    if acc.done() {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    /// Compares `λ₂(T)` with `λ₂` of every proper subtree on two or more vertices.
    fn tree(&self, t: &Graph, key: ScanKey, acc: &mut Acc) -> Result<()> {
        let tol = self.cfg.tol;
        let n = t.order();
        let lhs = spectral_values(t)?[0];
        let adj = t.adjacency();
        for s in 1..full(n) {
            if s.count_ones() < 2 || !connected_within(adj, s) {
                continue;
            }
            let vertices: Vec<usize> = bits(s).collect();
            let (sub, _) = t.induced_subgraph(&vertices)?;
            let rhs = spectral_values(&sub)?[0];
            let j = Judgement::new(PreconditionState::Unconditional, lhs, rhs, Relation::Le, false, &tol);
            acc.record(ScanKey { sub: s, ..key }, &j, || Instance::Subtree { t: t.clone(), vertices: vertices.clone() });
            if acc.done() {
                break;
            }
        }
        Ok(())
    }

    fn run_all(&self, target: Option<(PreconditionState, Direction)>) -> Result<Acc> {
        let work = units(self.theorem, &self.cfg, self.stream);
        if target.is_some() {
            // Searches stop at the first match, so walk the units in order.
            let mut acc = Acc::new(self.theorem, &self.cfg, target);
            for unit in work {
                self.run_unit(unit, &mut acc)?;
                if acc.done() {
                    break;
                }
            }
            return Ok(acc);
        }
        let go = || {
            work.par_iter()
                .map(|&unit| {
                    let mut acc = Acc::new(self.theorem, &self.cfg, None);
                    self.run_unit(unit, &mut acc).map(|_| acc)
                })
                .try_reduce(|| Acc::new(self.theorem, &self.cfg, None), |a, b| Ok(a.merge(b)))
        };
        if self.cfg.jobs == 0 {
            go()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.cfg.jobs)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            pool.install(go)
        }
    }
}

fn judgement_of(v: &Verdict) -> Judgement {
    Judgement {
        precondition: v.precondition,
        lhs: v.lhs,
        rhs: v.rhs,
        relation: v.relation,
        strict_expected: v.strict_expected,
        pass: v.pass,
    }
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

fn scanner<'a>(theorem: TheoremId, cfg: &ScanConfig, stream: Option<&'a [Graph]>) -> Result<Scan<'a>> {
    cfg.validate()?;
    Ok(Scan { theorem, cfg: *cfg, checker: Checker::new(cfg.tol), stream })
}

/// Runs `theorem` over every instance in the configured space.
pub fn scan_theorem(theorem: TheoremId, cfg: &ScanConfig) -> Result<ScanReport> {
    Ok(scanner(theorem, cfg, None)?.run_all(None)?.into_report())
}

/// Like [`scan_theorem`], with base graphs taken from `graphs` (disconnected
/// ones are skipped). Identification pairs range over `graphs × graphs` only,
/// without the named catalog.
pub fn scan_graphs(theorem: TheoremId, graphs: &[Graph], cfg: &ScanConfig) -> Result<ScanReport> {
    Ok(scanner(theorem, cfg, Some(graphs))?.run_all(None)?.into_report())
}

/// First instance in scan order with the given stratum and direction,
/// re-verified through its graph6 serialization. `Ok(None)` when the
/// configured space has none.
pub fn find_witness(
    theorem: TheoremId,
    precondition: PreconditionState,
    direction: Direction,
    cfg: &ScanConfig,
) -> Result<Option<Witness>> {
    find_in(theorem, precondition, direction, cfg, None)
}

pub fn find_witness_in(
    theorem: TheoremId,
    precondition: PreconditionState,
    direction: Direction,
    graphs: &[Graph],
    cfg: &ScanConfig,
) -> Result<Option<Witness>> {
    find_in(theorem, precondition, direction, cfg, Some(graphs))
}

fn find_in(
    theorem: TheoremId,
    precondition: PreconditionState,
    direction: Direction,
    cfg: &ScanConfig,
    stream: Option<&[Graph]>,
) -> Result<Option<Witness>> {
    let acc = scanner(theorem, cfg, stream)?.run_all(Some((precondition, direction)))?;
    match acc.found {
        Some(w) => {
            w.reverify(&cfg.tol)?;
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn cfg(n_max: usize) -> ScanConfig {
        ScanConfig::new(n_max).unwrap()
    }

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_connected(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        assert!(enumerate_connected(0).is_err());
        assert!(enumerate_connected(9).is_err());
    }

    #[test]
    fn enumeration_is_in_mask_order() {
        let masks: Vec<u64> = enumerate_connected(4).unwrap().map(|g| g.edge_mask().unwrap()).collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn prufer_gives_every_labelled_tree_once() {
        for n in 2..=6 {
            let mut seen = std::collections::HashSet::new();
            for code in 0..tree_count(n) {
                let t = prufer_tree(n, code).unwrap();
                assert!(t.is_tree());
                assert!(seen.insert(t.edge_mask().unwrap()));
            }
            let trees = enumerate_connected(n).unwrap().filter(Graph::is_tree).count() as u64;
            assert_eq!(seen.len() as u64, trees);
        }
    }

    #[test]
    fn table_matches_direct_values() {
        for m in (0..1u64 << pair_count(5)).step_by(37) {
            let g = Graph::from_mask(5, m).unwrap();
            let a = spectral_values(&g).unwrap();
            let b = direct_values(&g).unwrap();
            assert_eq!(a[0].to_bits(), b[0].to_bits());
            assert_eq!(a[1].to_bits(), b[1].to_bits());
        }
    }

    #[test]
    fn catalog_has_no_duplicates() {
        let c = catalog(5);
        assert!(c.iter().any(|(f, _)| f.to_string() == "cycle:3"));
        assert!(!c.iter().any(|(f, _)| f.to_string() == "complete:3"));
        // K₁, K₂, K₃ coincide with P₁, P₂, C₃ as labelled graphs; S₁, S₂ with P₁, P₂.
        assert_eq!(c.len(), 5 + 3 + 2 + 3);
    }

    #[test]
    fn thm_3_1_scan_has_no_less_bucket() {
        let r = scan_theorem(TheoremId::T3_1, &cfg(5)).unwrap();
        let t = r.tally(PreconditionState::Unconditional).unwrap();
        assert_eq!(r.tallies.len(), 1);
        assert_eq!(t.counts.less, 0);
        assert_eq!(t.counts.equal + t.counts.greater, t.counts.total());
        assert_eq!(r.failures(), 0);
        let expected: u64 = (2..=5).flat_map(|n| enumerate_connected(n).unwrap()).map(|g| g.size() as u64).sum();
        assert_eq!(r.total(), expected);
    }

    #[test]
    fn no_less_witness_for_subdivision() {
        let w = find_witness(TheoremId::T3_1, PreconditionState::Unconditional, Direction::Less, &cfg(5)).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn thm_4_1_fails_stratum_has_both_orders() {
        let r = scan_theorem(TheoremId::T4_1, &cfg(6)).unwrap();
        let t = r.tally(PreconditionState::Fails).unwrap();
        assert!(t.counts.less > 0);
        assert!(t.counts.equal + t.counts.greater > 0);
        assert_eq!(r.failures(), 0);
        for w in r.witnesses() {
            w.reverify(&Tolerances::default()).unwrap();
        }
    }

    #[test]
    fn witnesses_are_deterministic_across_job_counts() {
        let one = ScanConfig { jobs: 1, ..cfg(5) };
        let three = ScanConfig { jobs: 3, ..cfg(5) };
        let a = scan_theorem(TheoremId::T3_6, &one).unwrap();
        let b = scan_theorem(TheoremId::T3_6, &three).unwrap();
        assert_eq!(a.tallies, b.tallies);
        let lines = |r: &ScanReport| r.tallies.iter().map(CaseTally::to_json_line).collect::<Vec<_>>();
        assert_eq!(lines(&a), lines(&b));
    }

    #[test]
    fn witness_search_matches_scan_order() {
        let c = cfg(5);
        let r = scan_theorem(TheoremId::T3_6, &c).unwrap();
        let t = r.tally(PreconditionState::Fails).unwrap();
        let first = t.witnesses_in(Direction::Less).next().unwrap();
        let w = find_witness(TheoremId::T3_6, PreconditionState::Fails, Direction::Less, &c).unwrap().unwrap();
        assert_eq!(&w, first);
    }

    #[test]
    fn stream_scan_uses_given_graphs() {
        let graphs = vec![complete(3).unwrap(), Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()];
        let r = scan_graphs(TheoremId::T3_1, &graphs, &cfg(6)).unwrap();
        assert_eq!(r.total(), 3);
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::new(1).is_err());
        assert!(ScanConfig::new(9).is_err());
        assert!(ScanConfig { max_transfer: 0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut out = Vec::new();
        combinations(4, 2, &mut |c| out.push(c.to_vec()));
        assert_eq!(out, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
