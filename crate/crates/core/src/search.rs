//! Exhaustive search over proper surjective edge `t`-colorings.
//!
//! One depth-first engine drives every query: plain enumeration with a fold,
//! branch-and-bound for the min/max number of interval vertices, and
//! feasibility of colorings interval on a vertex set.
//!
//! Pruning rules, all exact:
//! - properness, checked per assignment through per-vertex color masks;
//! - surjectivity: more unused colors than uncolored edges is a dead end;
//! - a vertex whose partial spectrum already spans more than its degree can
//!   never become interval, and a complete interval vertex stays interval.
//!
//! Symmetry: the reversal `j -> t+1-j` preserves the interval count, so by
//! default only colorings lexicographically no larger than their reversal
//! (in branching order) are visited. For canonical `K_{m,n}` layouts an
//! optional mode breaks the row/column permutation symmetry instead.
//!
//! Parallel runs split the top of the tree into prefixes and share a
//! monotone incumbent keyed by `(score, prefix index)`, which makes both the
//! value and the returned witness independent of scheduling.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{self, EdgeColoring};
use crate::graph::{Graph, GraphLike, Part};

/// Largest `t` and vertex count the bitmask representation supports.
pub const MAX_COLORS: u32 = 64;
pub const MAX_VERTICES: usize = 64;

const SPLIT_DEPTH: usize = 2;
const FLUSH_EVERY: u64 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("t = {t} outside the admissible range [{lo}, {hi}]")]
    TOutOfRange { t: u32, lo: u32, hi: u32 },
    #[error("no proper edge {t}-coloring exists (t is below the chromatic index)")]
    NoColoring { t: u32 },
    #[error("graph too large for exhaustive search ({what})")]
    TooLarge { what: String },
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("automorphism reduction needs a canonical K_{{m,n}} layout")]
    UnsupportedSymmetry,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Node and wall-clock limits for one solve. `None` means unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    pub parallel_width: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: None,
            max_time: None,
            parallel_width: 1,
        }
    }
}

impl SearchBudget {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = Some(n);
        self
    }

    pub fn with_time(mut self, d: Duration) -> Self {
        self.max_time = Some(d);
        self
    }

    pub fn with_width(mut self, w: usize) -> Self {
        self.parallel_width = w.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "budget")]
    BudgetExhausted,
}

impl Status {
    pub fn is_exact(self) -> bool {
        self == Status::Exact
    }

    pub fn and(self, other: Status) -> Status {
        if self.is_exact() && other.is_exact() {
            Status::Exact
        } else {
            Status::BudgetExhausted
        }
    }
}

/// Answer of an optimization or feasibility query.
///
/// With [`Status::Exact`] the value is the optimum and the witness attains
/// it. With [`Status::BudgetExhausted`] the value is the best found so far,
/// which is a valid bound in the objective's direction (a lower bound for a
/// maximum, an upper bound for a minimum).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: Status,
    pub value: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<EdgeColoring>,
    #[serde(rename = "nodes")]
    pub nodes_visited: u64,
}

impl SearchOutcome {
    pub fn exact_value(&self) -> Option<usize> {
        self.status.is_exact().then_some(self.value)
    }
}

/// Which symmetry is factored out of the search tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Symmetry {
    /// Every coloring is visited.
    None,
    /// One coloring per `{φ, reversal(φ)}` pair.
    #[default]
    Reversal,
    /// Row/column permutations of `K_{m,n}` combined with reversal. Visits at
    /// least one coloring per orbit, so extrema are preserved but counts are
    /// not orbit counts.
    Automorphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    MaxInterval,
    MinInterval,
    /// All vertices of the mask interval; score 1 when met.
    IntervalOn(u64),
}

#[derive(Debug, Clone, Copy)]
enum Check {
    /// `color[a] < color[b]`
    Less(usize, usize),
    /// `color[a] + color[b] <= t + 1`
    SumAtMost(usize, usize),
}

/// Immutable search description shared by all workers.
struct Problem {
    t: u32,
    n_vertices: usize,
    n_edges: usize,
    endpoints: Vec<(usize, usize)>,
    degree: Vec<u32>,
    /// Edge colored at each depth.
    order: Vec<usize>,
    /// Vertices whose last incident edge is colored at each depth.
    completes: Vec<Vec<usize>>,
    /// Symmetry checks that become decidable at each depth.
    checks: Vec<Vec<Check>>,
    reversal: bool,
}

impl Problem {
    fn new(g: &Graph, t: u32, symmetry: Symmetry) -> Result<Self, SearchError> {
        if t > MAX_COLORS {
            return Err(SearchError::TooLarge {
                what: format!("t = {t} > {MAX_COLORS}"),
            });
        }
        if g.vertex_count() > MAX_VERTICES {
            return Err(SearchError::TooLarge {
                what: format!("{} vertices > {MAX_VERTICES}", g.vertex_count()),
            });
        }
        let order = branching_order(g);
        let n_edges = g.edge_count();
        let mut depth_of = vec![0; n_edges];
        for (d, &e) in order.iter().enumerate() {
            depth_of[e] = d;
        }
        let mut completes = vec![Vec::new(); n_edges];
        for v in 0..g.vertex_count() {
            let last = g
                .incident(v)
                .iter()
                .map(|&e| depth_of[e])
                .max()
                .expect("no isolated vertices");
            completes[last].push(v);
        }
        let mut checks = vec![Vec::new(); n_edges];
        if symmetry == Symmetry::Automorphism {
            for check in automorphism_checks(g)? {
                let (a, b) = match check {
                    Check::Less(a, b) | Check::SumAtMost(a, b) => (a, b),
                };
                checks[depth_of[a].max(depth_of[b])].push(check);
            }
        }
        Ok(Problem {
            t,
            n_vertices: g.vertex_count(),
            n_edges,
            endpoints: g.edges().to_vec(),
            degree: (0..g.vertex_count()).map(|v| g.degree(v) as u32).collect(),
            order,
            completes,
            checks,
            reversal: symmetry == Symmetry::Reversal,
        })
    }
}

/// Static most-constrained order: start at the edge with the largest endpoint
/// degrees, then repeatedly take the edge touching the most already-ordered
/// edges, so vertices complete (and prune) as early as possible.
fn branching_order(g: &Graph) -> Vec<usize> {
    let m = g.edge_count();
    let mut placed_at = vec![0usize; g.vertex_count()];
    let mut taken = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let best = (0..m)
            .filter(|&e| !taken[e])
            .max_by_key(|&e| {
                let (u, v) = g.endpoints(e);
                (
                    placed_at[u] + placed_at[v],
                    g.degree(u) + g.degree(v),
                    std::cmp::Reverse(e),
                )
            })
            .expect("an edge remains");
        taken[best] = true;
        let (u, v) = g.endpoints(best);
        placed_at[u] += 1;
        placed_at[v] += 1;
        order.push(best);
    }
    order
}

/// Row/column symmetry breaking for the canonical `K_{m,n}` layout, with
/// rows `x_1..x_n` and columns `y_1..y_m`:
/// - row `x_1` strictly increasing along `y_1..y_m`;
/// - column `y_1` strictly increasing along `x_2..x_n`;
/// - `color(x_1,y_1) + color(x_1,y_m) <= t + 1`, picking the reversal.
///
/// Any coloring can be brought into this form: permute columns to sort row
/// `x_1`, permute rows `x_2..x_n` to sort column `y_1`, and if the last
/// condition fails, reverse and repeat (row `x_1`'s min + max becomes
/// `2(t+1) - (min + max) < t + 1`).
fn automorphism_checks(g: &Graph) -> Result<Vec<Check>, SearchError> {
    let (m, n) = g.bipartite_dims().ok_or(SearchError::UnsupportedSymmetry)?;
    let edge = |i, j| g.bipartite_edge(i, j).expect("in range");
    let mut checks = Vec::new();
    for j in 1..m {
        checks.push(Check::Less(edge(1, j), edge(1, j + 1)));
    }
    for i in 2..n {
        checks.push(Check::Less(edge(i, 1), edge(i + 1, 1)));
    }
    if m >= 2 {
        checks.push(Check::SumAtMost(edge(1, 1), edge(1, m)));
    }
    Ok(checks)
}

#[inline]
fn span(mask: u64) -> u32 {
    64 - mask.leading_zeros() - mask.trailing_zeros()
}

/// Mutable per-worker search state.
#[derive(Clone)]
struct State {
    color: Vec<u8>,
    mask: Vec<u64>,
    uses: Vec<u32>,
    unused: u32,
    /// Vertices that can no longer be interval.
    doomed: u32,
    /// Doomed vertices inside the target set of an `IntervalOn` query.
    doomed_target: u32,
    /// Complete vertices with an interval spectrum.
    sealed: u32,
    target: u64,
}

impl State {
    fn new(p: &Problem, target: u64) -> Self {
        State {
            color: vec![0; p.n_edges],
            mask: vec![0; p.n_vertices],
            uses: vec![0; p.t as usize + 1],
            unused: p.t,
            doomed: 0,
            doomed_target: 0,
            sealed: 0,
            target,
        }
    }

    #[inline]
    fn is_doomed(mask: u64, deg: u32) -> bool {
        mask != 0 && span(mask) > deg
    }

    #[inline]
    fn touch(&mut self, p: &Problem, v: usize, bit: u64, add: bool) {
        let before = Self::is_doomed(self.mask[v], p.degree[v]);
        if add {
            self.mask[v] |= bit;
        } else {
            self.mask[v] &= !bit;
        }
        let after = Self::is_doomed(self.mask[v], p.degree[v]);
        if before != after {
            let in_target = (self.target >> v) & 1 == 1;
            if after {
                self.doomed += 1;
                self.doomed_target += in_target as u32;
            } else {
                self.doomed -= 1;
                self.doomed_target -= in_target as u32;
            }
        }
    }

    fn assign(&mut self, p: &Problem, depth: usize, e: usize, c: u32) {
        let (u, v) = p.endpoints[e];
        let bit = 1u64 << (c - 1);
        self.color[e] = c as u8;
        self.touch(p, u, bit, true);
        self.touch(p, v, bit, true);
        if self.uses[c as usize] == 0 {
            self.unused -= 1;
        }
        self.uses[c as usize] += 1;
        for &w in &p.completes[depth] {
            if !Self::is_doomed(self.mask[w], p.degree[w]) {
                self.sealed += 1;
            }
        }
    }

    fn unassign(&mut self, p: &Problem, depth: usize, e: usize, c: u32) {
        for &w in &p.completes[depth] {
            if !Self::is_doomed(self.mask[w], p.degree[w]) {
                self.sealed -= 1;
            }
        }
        let (u, v) = p.endpoints[e];
        let bit = 1u64 << (c - 1);
        self.uses[c as usize] -= 1;
        if self.uses[c as usize] == 0 {
            self.unused += 1;
        }
        self.touch(p, u, bit, false);
        self.touch(p, v, bit, false);
        self.color[e] = 0;
    }

    fn checks_hold(&self, p: &Problem, depth: usize, e: usize, c: u32) -> bool {
        let color = |x: usize| if x == e { c } else { self.color[x] as u32 };
        p.checks[depth].iter().all(|check| match *check {
            Check::Less(a, b) => color(a) < color(b),
            Check::SumAtMost(a, b) => color(a) + color(b) <= p.t + 1,
        })
    }
}

/// A complete coloring reached by the enumerator.
pub struct Leaf<'a> {
    problem: &'a Problem,
    state: &'a State,
}

impl Leaf<'_> {
    pub fn t(&self) -> u32 {
        self.problem.t
    }

    /// Colors indexed by edge.
    pub fn colors(&self) -> impl Iterator<Item = u32> + '_ {
        self.state.color.iter().map(|&c| c as u32)
    }

    /// Bit `v` set iff vertex `v` has an interval spectrum.
    pub fn interval_mask(&self) -> u64 {
        (0..self.problem.n_vertices)
            .filter(|&v| span(self.state.mask[v]) == self.problem.degree[v])
            .fold(0, |acc, v| acc | (1 << v))
    }

    pub fn interval_vertices(&self) -> BTreeSet<usize> {
        let mask = self.interval_mask();
        (0..self.problem.n_vertices).filter(|&v| (mask >> v) & 1 == 1).collect()
    }

    /// `f`, the number of interval vertices.
    pub fn f(&self) -> usize {
        self.problem.n_vertices - self.state.doomed as usize
    }

    pub fn to_coloring(&self) -> EdgeColoring {
        EdgeColoring::new(self.problem.t, self.colors().collect()).expect("engine colors are in range")
    }
}

/// A fold over visited colorings. `merge` must be associative and
/// commutative so results do not depend on visit order or worker count.
pub trait ColoringFold: Sync {
    type Acc: Send;
    fn empty(&self) -> Self::Acc;
    fn visit(&self, acc: &mut Self::Acc, leaf: &Leaf<'_>);
    fn merge(&self, a: Self::Acc, b: Self::Acc) -> Self::Acc;
}

/// Counts visited colorings.
pub struct CountFold;

impl ColoringFold for CountFold {
    type Acc = u64;
    fn empty(&self) -> u64 {
        0
    }
    fn visit(&self, acc: &mut u64, _: &Leaf<'_>) {
        *acc += 1;
    }
    fn merge(&self, a: u64, b: u64) -> u64 {
        a + b
    }
}

/// Shared budget accounting.
struct Limits {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Limits {
    fn new(budget: &SearchBudget) -> Self {
        Limits {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
        }
    }
}

/// Per-worker counter that batches updates into [`Limits`].
struct Meter<'a> {
    limits: &'a Limits,
    pending: u64,
    seen: u64,
}

impl<'a> Meter<'a> {
    fn new(limits: &'a Limits) -> Self {
        Meter {
            limits,
            pending: 0,
            seen: limits.nodes.load(Ordering::Relaxed),
        }
    }

    /// Counts one node; false once the budget is gone.
    #[inline]
    fn tick(&mut self) -> bool {
        if self.stopped() {
            return false;
        }
        self.pending += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.seen + self.pending > max {
                // the node that would cross the limit is not expanded
                self.pending -= 1;
                self.flush();
                self.limits.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if self.pending >= FLUSH_EVERY {
            self.flush();
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    self.limits.exhausted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.stopped()
    }

    #[inline]
    fn stopped(&self) -> bool {
        self.limits.exhausted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.seen = self.limits.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        self.flush();
    }
}

trait Walker {
    /// True if the subtree below the current state can be skipped.
    fn prune(&mut self, p: &Problem, st: &State) -> bool;
    fn leaf(&mut self, p: &Problem, st: &State, tied: bool);
}

/// Depth-first walk from `depth` down to `limit` (a leaf is reported at
/// `limit`). `tied` records that the colors so far equal their reversal.
fn walk<W: Walker>(
    p: &Problem,
    st: &mut State,
    depth: usize,
    limit: usize,
    tied: bool,
    w: &mut W,
    meter: &mut Meter<'_>,
) {
    if depth == limit {
        w.leaf(p, st, tied);
        return;
    }
    let e = p.order[depth];
    let (u, v) = p.endpoints[e];
    let forbidden = st.mask[u] | st.mask[v];
    let remaining = (p.n_edges - depth - 1) as u32;
    for c in 1..=p.t {
        if tied && p.reversal && 2 * c > p.t + 1 {
            break;
        }
        if (forbidden >> (c - 1)) & 1 == 1 || !st.checks_hold(p, depth, e, c) {
            continue;
        }
        if !meter.tick() {
            return;
        }
        st.assign(p, depth, e, c);
        if st.unused <= remaining && !w.prune(p, st) {
            walk(p, st, depth + 1, limit, tied && 2 * c == p.t + 1, w, meter);
        }
        st.unassign(p, depth, e, c);
        if meter.stopped() {
            return;
        }
    }
}

/// Top-of-tree partial assignment handed to one worker.
struct Prefix {
    colors: Vec<u32>,
    tied: bool,
}

struct PrefixCollector {
    limit: usize,
    found: Vec<Prefix>,
}

impl Walker for PrefixCollector {
    fn prune(&mut self, _: &Problem, _: &State) -> bool {
        false
    }
    fn leaf(&mut self, p: &Problem, st: &State, tied: bool) {
        self.found.push(Prefix {
            colors: p.order[..self.limit].iter().map(|&e| st.color[e] as u32).collect(),
            tied,
        });
    }
}

fn prefixes(p: &Problem, target: u64) -> Vec<Prefix> {
    let limit = SPLIT_DEPTH.min(p.n_edges);
    let mut st = State::new(p, target);
    let mut collector = PrefixCollector {
        limit,
        found: Vec::new(),
    };
    // prefix nodes are revisited by the workers, so they are not metered
    let free = Limits::new(&SearchBudget::unbounded());
    walk(p, &mut st, 0, limit, true, &mut collector, &mut Meter::new(&free));
    collector.found
}

/// Rebuilds a worker state from a prefix.
fn replay(p: &Problem, target: u64, prefix: &Prefix) -> State {
    let mut st = State::new(p, target);
    for (depth, &c) in prefix.colors.iter().enumerate() {
        st.assign(p, depth, p.order[depth], c);
    }
    st
}

fn run_parallel<T: Send, F>(width: usize, n: usize, job: F) -> Result<Vec<T>, SearchError>
where
    F: Fn(usize) -> T + Sync + Send,
{
    if width <= 1 || n <= 1 {
        return Ok((0..n).map(job).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(width)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    Ok(pool.install(|| (0..n).into_par_iter().map(job).collect()))
}

/// Packs `(score, prefix index)` so that `fetch_max` orders by higher score,
/// then lower index.
fn pack(score: u32, index: usize) -> u64 {
    ((score as u64 + 1) << 32) | (u32::MAX as u64 - index as u64)
}

fn unpack(key: u64) -> Option<(u32, usize)> {
    (key != 0).then(|| {
        (
            ((key >> 32) - 1) as u32,
            (u32::MAX as u64 - (key & 0xffff_ffff)) as usize,
        )
    })
}

struct Optimizer<'a> {
    objective: Objective,
    index: usize,
    shared: &'a AtomicU64,
    best: Option<u32>,
    witness: Option<Vec<u8>>,
}

impl Optimizer<'_> {
    fn bound(&self, p: &Problem, st: &State) -> u32 {
        let n = p.n_vertices as u32;
        match self.objective {
            Objective::MaxInterval => n - st.doomed,
            Objective::MinInterval => n - st.sealed,
            Objective::IntervalOn(_) => (st.doomed_target == 0) as u32,
        }
    }

    fn score(&self, p: &Problem, st: &State) -> u32 {
        let n = p.n_vertices as u32;
        match self.objective {
            Objective::MaxInterval => n - st.doomed,
            Objective::MinInterval => st.doomed,
            Objective::IntervalOn(_) => (st.doomed_target == 0) as u32,
        }
    }
}

impl Walker for Optimizer<'_> {
    fn prune(&mut self, p: &Problem, st: &State) -> bool {
        let bound = self.bound(p, st);
        if matches!(self.objective, Objective::IntervalOn(_)) && bound == 0 {
            return true;
        }
        if self.best.is_some_and(|b| bound <= b) {
            return true;
        }
        match unpack(self.shared.load(Ordering::Relaxed)) {
            Some((score, idx)) => bound < score || (bound == score && idx < self.index),
            None => false,
        }
    }

    fn leaf(&mut self, p: &Problem, st: &State, _: bool) {
        let score = self.score(p, st);
        if self.best.is_none_or(|b| score > b) {
            self.best = Some(score);
            self.witness = Some(st.color.clone());
            self.shared.fetch_max(pack(score, self.index), Ordering::Relaxed);
        }
    }
}

struct SolveResult {
    best: Option<(u32, Vec<u8>)>,
    status: Status,
    nodes: u64,
}

fn optimize(
    g: &Graph,
    t: u32,
    objective: Objective,
    symmetry: Symmetry,
    budget: &SearchBudget,
) -> Result<SolveResult, SearchError> {
    let p = Problem::new(g, t, symmetry)?;
    let target = match objective {
        Objective::IntervalOn(mask) => mask,
        _ => 0,
    };
    let limits = Limits::new(budget);
    let tops = prefixes(&p, target);
    let shared = AtomicU64::new(0);
    let results = run_parallel(budget.parallel_width, tops.len(), |index| {
        if limits.exhausted.load(Ordering::Relaxed) {
            return None;
        }
        let prefix = &tops[index];
        let mut st = replay(&p, target, prefix);
        let mut opt = Optimizer {
            objective,
            index,
            shared: &shared,
            best: None,
            witness: None,
        };
        let mut meter = Meter::new(&limits);
        if !opt.prune(&p, &st) {
            walk(
                &p,
                &mut st,
                prefix.colors.len(),
                p.n_edges,
                prefix.tied,
                &mut opt,
                &mut meter,
            );
        }
        opt.best.zip(opt.witness)
    })?;
    // ties resolve to the lowest prefix index, i.e. the first in serial order
    let mut best: Option<(u32, Vec<u8>)> = None;
    for r in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    let status = if limits.exhausted.load(Ordering::Relaxed) {
        Status::BudgetExhausted
    } else {
        Status::Exact
    };
    Ok(SolveResult {
        best,
        status,
        nodes: limits.nodes.load(Ordering::Relaxed),
    })
}

fn check_t(g: &Graph, t: u32) -> Result<(), SearchError> {
    let lo = g.max_degree() as u32;
    let hi = g.edge_count() as u32;
    if t < lo || t > hi {
        return Err(SearchError::TOutOfRange { t, lo, hi });
    }
    Ok(())
}

fn to_coloring(t: u32, colors: Vec<u8>) -> EdgeColoring {
    EdgeColoring::new(t, colors.into_iter().map(u32::from).collect()).expect("engine colors are in range")
}

/// Exact minimum or maximum of `f` over all proper `t`-colorings.
pub fn mu_with(
    g: &Graph,
    t: u32,
    extremum: Extremum,
    symmetry: Symmetry,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    check_t(g, t)?;
    let objective = match extremum {
        Extremum::Max => Objective::MaxInterval,
        Extremum::Min => Objective::MinInterval,
    };
    let r = optimize(g, t, objective, symmetry, budget)?;
    let n = g.vertex_count();
    match (r.best, r.status) {
        (None, Status::Exact) => Err(SearchError::NoColoring { t }),
        (None, Status::BudgetExhausted) => Ok(SearchOutcome {
            status: r.status,
            value: if extremum == Extremum::Max { 0 } else { n },
            witness: None,
            nodes_visited: r.nodes,
        }),
        (Some((score, colors)), status) => Ok(SearchOutcome {
            status,
            value: match extremum {
                Extremum::Max => score as usize,
                Extremum::Min => n - score as usize,
            },
            witness: Some(to_coloring(t, colors)),
            nodes_visited: r.nodes,
        }),
    }
}

/// `μ1(G,t)`: the fewest interval vertices over proper `t`-colorings.
pub fn mu1(g: &Graph, t: u32, budget: &SearchBudget) -> Result<SearchOutcome, SearchError> {
    mu_with(g, t, Extremum::Min, Symmetry::Reversal, budget)
}

/// `μ2(G,t)`: the most interval vertices over proper `t`-colorings.
pub fn mu2(g: &Graph, t: u32, budget: &SearchBudget) -> Result<SearchOutcome, SearchError> {
    mu_with(g, t, Extremum::Max, Symmetry::Reversal, budget)
}

fn vertex_mask(g: &Graph, r: &BTreeSet<usize>) -> Result<u64, SearchError> {
    let mut mask = 0u64;
    for &v in r {
        if v >= g.vertex_count() {
            return Err(SearchError::NoSuchVertex(v));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// Looks for a proper `t`-coloring interval at every vertex of `r`.
/// Value 1 with a witness when one exists, 0 when none does (exact) or
/// none was found (budget).
pub fn feasible_interval_on(
    g: &Graph,
    r: &BTreeSet<usize>,
    t: u32,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    check_t(g, t)?;
    if g.vertex_count() > MAX_VERTICES {
        return Err(SearchError::TooLarge {
            what: format!("{} vertices > {MAX_VERTICES}", g.vertex_count()),
        });
    }
    let mask = vertex_mask(g, r)?;
    let res = optimize(g, t, Objective::IntervalOn(mask), Symmetry::Reversal, budget)?;
    let found = res.best.map(|(_, colors)| to_coloring(t, colors));
    Ok(SearchOutcome {
        status: if found.is_some() { Status::Exact } else { res.status },
        value: found.is_some() as usize,
        witness: found,
        nodes_visited: res.nodes,
    })
}

/// Whether any proper `t`-coloring exists; `None` if the budget ran out.
pub fn proper_coloring_exists(g: &Graph, t: u32, budget: &SearchBudget) -> Result<Option<bool>, SearchError> {
    let out = feasible_interval_on(g, &BTreeSet::new(), t, budget)?;
    Ok(match (out.value, out.status) {
        (1, _) => Some(true),
        (_, Status::Exact) => Some(false),
        _ => None,
    })
}

/// Result of [`enumerate_colorings`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<A> {
    pub acc: A,
    pub status: Status,
    pub nodes_visited: u64,
}

struct Visiting<'a, F: ColoringFold> {
    fold: &'a F,
    acc: F::Acc,
}

impl<F: ColoringFold> Walker for Visiting<'_, F> {
    fn prune(&mut self, _: &Problem, _: &State) -> bool {
        false
    }
    fn leaf(&mut self, p: &Problem, st: &State, _: bool) {
        self.fold.visit(&mut self.acc, &Leaf { problem: p, state: st });
    }
}

/// Visits every proper surjective `t`-coloring once (once per reversal pair
/// under [`Symmetry::Reversal`]) and folds over them.
pub fn enumerate_colorings<F: ColoringFold>(
    g: &Graph,
    t: u32,
    symmetry: Symmetry,
    fold: &F,
    budget: &SearchBudget,
) -> Result<Enumeration<F::Acc>, SearchError> {
    check_t(g, t)?;
    let p = Problem::new(g, t, symmetry)?;
    let limits = Limits::new(budget);
    let tops = prefixes(&p, 0);
    let parts = run_parallel(budget.parallel_width, tops.len(), |index| {
        let prefix = &tops[index];
        let mut st = replay(&p, 0, prefix);
        let mut visiting = Visiting {
            fold,
            acc: fold.empty(),
        };
        let mut meter = Meter::new(&limits);
        walk(
            &p,
            &mut st,
            prefix.colors.len(),
            p.n_edges,
            prefix.tied,
            &mut visiting,
            &mut meter,
        );
        visiting.acc
    })?;
    let acc = parts.into_iter().fold(fold.empty(), |a, b| fold.merge(a, b));
    Ok(Enumeration {
        acc,
        status: if limits.exhausted.load(Ordering::Relaxed) {
            Status::BudgetExhausted
        } else {
            Status::Exact
        },
        nodes_visited: limits.nodes.load(Ordering::Relaxed),
    })
}

/// Feasibility of one `t` in a [`WRange`] sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityRow {
    pub t: u32,
    pub feasible: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EdgeColoring>,
}

/// Feasible color counts for colorings interval on a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WRange {
    pub rows: Vec<FeasibilityRow>,
}

impl WRange {
    pub fn all_exact(&self) -> bool {
        self.rows.iter().all(|r| r.status.is_exact())
    }

    pub fn feasible_ts(&self) -> Vec<u32> {
        self.rows.iter().filter(|r| r.feasible).map(|r| r.t).collect()
    }

    /// Least feasible `t`; exact only if every smaller row was decided.
    pub fn w(&self) -> Option<(u32, Status)> {
        let pos = self.rows.iter().position(|r| r.feasible)?;
        let status = self.rows[..pos].iter().fold(Status::Exact, |s, r| s.and(r.status));
        Some((self.rows[pos].t, status))
    }

    /// Greatest feasible `t`; exact only if every larger row was decided.
    pub fn big_w(&self) -> Option<(u32, Status)> {
        let pos = self.rows.iter().rposition(|r| r.feasible)?;
        let status = self.rows[pos + 1..].iter().fold(Status::Exact, |s, r| s.and(r.status));
        Some((self.rows[pos].t, status))
    }

    /// Whether the feasible `t` form one run with no gaps.
    pub fn is_contiguous(&self) -> bool {
        let ts = self.feasible_ts();
        ts.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

/// Decides feasibility of an `r`-interval coloring for every `t` from the
/// maximum degree up to `|E|`. Rows below the chromatic index come back
/// infeasible.
pub fn w_range(g: &Graph, r: &BTreeSet<usize>, budget: &SearchBudget) -> Result<WRange, SearchError> {
    let lo = g.max_degree() as u32;
    let hi = g.edge_count() as u32;
    let rows = (lo..=hi)
        .map(|t| {
            let out = feasible_interval_on(g, r, t, budget)?;
            Ok(FeasibilityRow {
                t,
                feasible: out.value == 1,
                status: out.status,
                witness: out.witness,
            })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(WRange { rows })
}

/// Vertex sets of a part, or all vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexSelection {
    X,
    Y,
    All,
}

impl VertexSelection {
    pub fn resolve(self, g: &Graph) -> BTreeSet<usize> {
        match self {
            VertexSelection::X => g.part_vertices(Part::X).into_iter().collect(),
            VertexSelection::Y => g.part_vertices(Part::Y).into_iter().collect(),
            VertexSelection::All => (0..g.vertex_count()).collect(),
        }
    }
}

/// Sanity check used by callers that receive witnesses from elsewhere.
pub fn witness_ok(g: &Graph, w: &EdgeColoring, value: usize) -> bool {
    coloring::interval_count(g, w).is_ok_and(|f| f == value)
}
