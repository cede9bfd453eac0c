//! Game parameters derived from per-`t` optima, the closed forms for
//! `K_{m,n}`, and the sweep that checks closed forms against the oracle.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{self, ColoringError, EdgeColoring};
use crate::constructions::{self, ConstructionError};
use crate::graph::{self, ChromaticIndex, Graph, GraphError, GraphLike};
use crate::search::{
    self, ColoringFold, Leaf, SearchBudget, SearchError, SearchOutcome, Status, Symmetry, VertexSelection,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("m and n must be positive, got m={m}, n={n}")]
    BadPair { m: usize, n: usize },
    #[error("verification bounds need 1 <= max_n <= max_m, got max_m={max_m}, max_n={max_n}")]
    BadBounds { max_m: usize, max_n: usize },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Orders a pair so the first entry is the larger part.
pub fn normalize(m: usize, n: usize) -> Result<(usize, usize), AnalysisError> {
    if m == 0 || n == 0 {
        return Err(AnalysisError::BadPair { m, n });
    }
    Ok((m.max(n), m.min(n)))
}

/// `μ21(K_{m,n})`: `m + 1` when `n = 1` or `m = n = 2`, else `m`.
pub fn mu21_closed_form(m: usize, n: usize) -> Result<usize, AnalysisError> {
    let (m, n) = normalize(m, n)?;
    Ok(if n == 1 || (m == 2 && n == 2) { m + 1 } else { m })
}

/// Least `t` admitting an interval coloring of `K_{m,n}`: `m + n - gcd(m, n)`.
pub fn w_closed(m: usize, n: usize) -> Result<usize, AnalysisError> {
    let (m, n) = normalize(m, n)?;
    Ok(m + n - m.gcd(&n))
}

/// Greatest `t` admitting an interval coloring of `K_{m,n}`: `m + n - 1`.
pub fn big_w_closed(m: usize, n: usize) -> Result<usize, AnalysisError> {
    let (m, n) = normalize(m, n)?;
    Ok(m + n - 1)
}

/// Least `t` admitting a coloring interval on the larger part `Y`:
/// `n * ceil(m / n)`.
pub fn wy_closed(m: usize, n: usize) -> Result<usize, AnalysisError> {
    let (m, n) = normalize(m, n)?;
    Ok(n * m.div_ceil(n))
}

/// `max ≤ min·⌈max/min⌉ ≤ m+n−gcd ≤ m+n−1 ≤ mn`.
pub fn bound_chain_holds(m: usize, n: usize) -> bool {
    if m == 0 || n == 0 {
        return false;
    }
    let (hi, lo) = (m.max(n), m.min(n));
    let chain = [hi, lo * hi.div_ceil(lo), m + n - m.gcd(&n), m + n - 1, m * n];
    chain.windows(2).all(|w| w[0] <= w[1])
}

/// Pairs `m ≥ n` with `m ≥ 3, n = 2` or `n ≥ 3`, where `μ2(K_{m,n}, mn) = m` is expected.
pub fn mu21_is_m_case(m: usize, n: usize) -> bool {
    (m >= 3 && n == 2) || (m >= n && n >= 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuRecord {
    pub t: u32,
    pub mu1: SearchOutcome,
    pub mu2: SearchOutcome,
}

/// Exact (or bounded) `μ1` and `μ2` for every `t` from the chromatic index
/// to `|E|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuTable {
    pub graph: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub rows: Vec<MuRecord>,
}

fn t_range(g: &Graph, budget: &SearchBudget) -> (u32, u32) {
    let lo = match g.chromatic_index(budget) {
        ChromaticIndex::Exact(k) => k,
        ChromaticIndex::Unknown { lower } => lower,
    };
    (lo as u32, g.edge_count() as u32)
}

pub fn mu_table(g: &Graph, budget: &SearchBudget) -> Result<MuTable, AnalysisError> {
    let (lo, hi) = t_range(g, budget);
    let mut rows = Vec::new();
    for t in lo..=hi {
        let mu1 = match search::mu1(g, t, budget) {
            // only reachable when the chromatic index was left undecided
            Err(SearchError::NoColoring { .. }) => continue,
            other => other?,
        };
        let mu2 = search::mu2(g, t, budget)?;
        rows.push(MuRecord { t, mu1, mu2 });
    }
    Ok(MuTable {
        graph: g.to_string(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        rows,
    })
}

impl MuTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,mu1,mu1_status,mu2,mu2_status\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.t,
                r.mu1.value,
                status_name(r.mu1.status),
                r.mu2.value,
                status_name(r.mu2.status)
            )
            .unwrap();
        }
        out
    }
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::BudgetExhausted => "budget",
    }
}

/// One folded parameter and the `t` that attains it (smallest on ties).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Param {
    pub value: usize,
    pub t: u32,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuParams {
    pub mu11: Param,
    pub mu12: Param,
    pub mu21: Param,
    pub mu22: Param,
}

fn fold_rows<F>(rows: &[MuRecord], pick: F, minimize: bool) -> Param
where
    F: Fn(&MuRecord) -> &SearchOutcome,
{
    let mut best: Option<(usize, u32)> = None;
    let mut status = Status::Exact;
    for r in rows {
        let o = pick(r);
        status = status.and(o.status);
        let better = match best {
            None => true,
            Some((v, _)) if minimize => o.value < v,
            Some((v, _)) => o.value > v,
        };
        if better {
            best = Some((o.value, r.t));
        }
    }
    let (value, t) = best.unwrap_or((0, 0));
    Param { value, t, status }
}

/// Folds a table into `(μ11, μ12, μ21, μ22)`. Each is exact only when every
/// row it folds over is exact.
pub fn mu_params(table: &MuTable) -> MuParams {
    MuParams {
        mu11: fold_rows(&table.rows, |r| &r.mu1, true),
        mu12: fold_rows(&table.rows, |r| &r.mu1, false),
        mu21: fold_rows(&table.rows, |r| &r.mu2, true),
        mu22: fold_rows(&table.rows, |r| &r.mu2, false),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameObjective {
    /// Alice picks `t` to minimize, Bob colors to maximize.
    #[serde(rename = "mu21")]
    Mu21,
    /// Alice picks `t` to maximize, Bob colors to minimize.
    #[serde(rename = "mu12")]
    Mu12,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameResult {
    pub objective: GameObjective,
    pub alice_t: u32,
    pub bob_witness: Option<EdgeColoring>,
    pub value: usize,
    pub status: Status,
}

/// Plays the color-count game: Alice's `t` is the smallest optimal one and
/// Bob's coloring is the solver's witness at that `t`.
pub fn game_solve(g: &Graph, objective: GameObjective, budget: &SearchBudget) -> Result<GameResult, AnalysisError> {
    let (lo, hi) = t_range(g, budget);
    let mut best: Option<(u32, SearchOutcome)> = None;
    let mut status = Status::Exact;
    for t in lo..=hi {
        let reply = match objective {
            GameObjective::Mu21 => search::mu2(g, t, budget),
            GameObjective::Mu12 => search::mu1(g, t, budget),
        };
        let reply = match reply {
            Err(SearchError::NoColoring { .. }) => continue,
            other => other?,
        };
        status = status.and(reply.status);
        let better = match &best {
            None => true,
            Some((_, b)) => match objective {
                GameObjective::Mu21 => reply.value < b.value,
                GameObjective::Mu12 => reply.value > b.value,
            },
        };
        if better {
            best = Some((t, reply));
        }
    }
    let (alice_t, reply) = best.ok_or(SearchError::NoColoring { t: hi })?;
    Ok(GameResult {
        objective,
        alice_t,
        bob_witness: reply.witness,
        value: reply.value,
        status,
    })
}

/// Counts colorings whose interval vertices do not induce a linear forest.
pub struct LinearForestFold<'g> {
    pub graph: &'g Graph,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepTally {
    pub colorings: u64,
    pub with_interval_vertex: u64,
    pub counterexamples: u64,
    pub first_counterexample: Option<EdgeColoring>,
}

impl ColoringFold for LinearForestFold<'_> {
    type Acc = SweepTally;

    fn empty(&self) -> SweepTally {
        SweepTally::default()
    }

    fn visit(&self, acc: &mut SweepTally, leaf: &Leaf<'_>) {
        acc.colorings += 1;
        let vint = leaf.interval_vertices();
        if vint.is_empty() {
            return;
        }
        acc.with_interval_vertex += 1;
        let sub = self
            .graph
            .induced_subgraph(&vint)
            .expect("vertices come from the graph");
        if !graph::is_linear_forest(&sub) {
            acc.counterexamples += 1;
            if acc.first_counterexample.is_none() {
                acc.first_counterexample = Some(leaf.to_coloring());
            }
        }
    }

    fn merge(&self, a: SweepTally, b: SweepTally) -> SweepTally {
        SweepTally {
            colorings: a.colorings + b.colorings,
            with_interval_vertex: a.with_interval_vertex + b.with_interval_vertex,
            counterexamples: a.counterexamples + b.counterexamples,
            first_counterexample: a.first_counterexample.or(b.first_counterexample),
        }
    }
}

/// Runs the linear-forest sweep over every coloring with `t = |E|`.
pub fn linear_forest_sweep(g: &Graph, budget: &SearchBudget) -> Result<(SweepTally, Status), AnalysisError> {
    let t = g.edge_count() as u32;
    let e = search::enumerate_colorings(g, t, Symmetry::None, &LinearForestFold { graph: g }, budget)?;
    Ok((e.acc, e.status))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub pair: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    pub expected: i64,
    pub got: Option<i64>,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<ClaimRecord>,
}

impl Report {
    pub fn count(&self, status: ClaimStatus) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn all_passed_or_skipped(&self) -> bool {
        self.count(ClaimStatus::Fail) == 0
    }

    pub fn for_claim<'a>(&'a self, claim: &'a str) -> impl Iterator<Item = &'a ClaimRecord> + 'a {
        self.records.iter().filter(move |r| r.claim == claim)
    }

    fn push(
        &mut self,
        claim: &str,
        pair: (usize, usize),
        t: Option<u32>,
        expected: i64,
        got: Option<i64>,
        ok: impl FnOnce(i64) -> bool,
    ) {
        let status = match got {
            None => ClaimStatus::Skipped,
            Some(v) if ok(v) => ClaimStatus::Pass,
            Some(_) => ClaimStatus::Fail,
        };
        self.records.push(ClaimRecord {
            claim: claim.to_string(),
            pair: [pair.0, pair.1],
            t,
            expected,
            got,
            status,
        });
    }

    fn push_eq(&mut self, claim: &str, pair: (usize, usize), t: Option<u32>, expected: i64, got: Option<i64>) {
        self.push(claim, pair, t, expected, got, |v| v == expected);
    }
}

fn exact<T: Into<i64>>(value: T, status: Status) -> Option<i64> {
    status.is_exact().then(|| value.into())
}

/// Construction-side checks for the staircase coloring and its collapse
/// sequence on `K_{m,n}`; needs no search.
pub fn verify_constructions(m: usize, n: usize, report: &mut Report) -> Result<(), AnalysisError> {
    let (m, n) = normalize(m, n)?;
    let pair = (m, n);
    let g = Graph::complete_bipartite(m, n)?;
    let xi = constructions::staircase_coloring(m, n)?;
    report.push_eq(
        "staircase_f",
        pair,
        Some(xi.t()),
        (m + n) as i64,
        Some(coloring::interval_count(&g, &xi)? as i64),
    );
    report.push_eq(
        "staircase_harmonic",
        pair,
        Some(xi.t()),
        1,
        Some(coloring::is_harmonic(&g, &xi)? as i64),
    );
    let trace = constructions::collapse_sequence(&g, &xi, n - 1)?;
    let delta = g.max_degree();
    let start = coloring::summarize(&g, &xi)?;
    let max_degree_interval: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == delta && start.interval[v])
        .collect();
    for j in 1..n {
        let stage = &trace.stages[j];
        let t = Some(stage.t());
        let f = trace.f_values[j] as i64;
        report.push_eq("collapse_f", pair, t, (m + n - j) as i64, Some(f));
        report.push("collapse_f_above_m", pair, t, (m + 1) as i64, Some(f), |v| v > m as i64);
        report.push_eq(
            "collapse_harmonic",
            pair,
            t,
            1,
            Some(coloring::is_harmonic(&g, stage)? as i64),
        );
        let summary = coloring::summarize(&g, stage)?;
        let kept = max_degree_interval.iter().filter(|&&v| summary.interval[v]).count();
        report.push_eq(
            "collapse_max_degree_interval",
            pair,
            t,
            max_degree_interval.len() as i64,
            Some(kept as i64),
        );
    }
    Ok(())
}

fn verify_w_range(
    g: &Graph,
    pair: (usize, usize),
    budget: &SearchBudget,
    report: &mut Report,
) -> Result<(), AnalysisError> {
    let (m, n) = pair;
    let edges = (m * n) as i64;
    let sets = [
        ("Y", VertexSelection::Y, Some(wy_closed(m, n)? as i64), edges),
        ("X", VertexSelection::X, None, edges),
        (
            "V",
            VertexSelection::All,
            Some(w_closed(m, n)? as i64),
            big_w_closed(m, n)? as i64,
        ),
    ];
    for (name, sel, w_expected, big_w_expected) in sets {
        let wr = search::w_range(g, &sel.resolve(g), budget)?;
        if let Some(expected) = w_expected {
            let got = wr.w().and_then(|(w, s)| exact(w, s));
            report.push_eq(&format!("w_{name}"), pair, None, expected, got);
        }
        let got = wr.big_w().and_then(|(w, s)| exact(w, s));
        report.push_eq(&format!("W_{name}"), pair, None, big_w_expected, got);
        let contiguous = wr.all_exact().then_some(wr.is_contiguous() as i64);
        report.push_eq(&format!("contiguous_{name}"), pair, None, 1, contiguous);
    }
    Ok(())
}

/// Compares every closed form against the oracle on all `K_{m,n}` with
/// `n <= m <= max_m`, `n <= max_n`. Budget-exhausted solves are reported as
/// skipped, never as passes. The solver is never given closed-form bounds.
pub fn verify_suite(max_m: usize, max_n: usize, budget: &SearchBudget) -> Result<Report, AnalysisError> {
    if max_n == 0 || max_n > max_m {
        return Err(AnalysisError::BadBounds { max_m, max_n });
    }
    let mut report = Report::default();
    for n in 1..=max_n {
        for m in n..=max_m {
            verify_pair(m, n, budget, &mut report)?;
        }
    }
    Ok(report)
}

pub fn verify_pair(m: usize, n: usize, budget: &SearchBudget, report: &mut Report) -> Result<(), AnalysisError> {
    let (m, n) = normalize(m, n)?;
    let pair = (m, n);
    let g = Graph::complete_bipartite(m, n)?;

    report.push_eq("bound_chain", pair, None, 1, Some(bound_chain_holds(m, n) as i64));
    verify_constructions(m, n, report)?;

    let table = mu_table(&g, budget)?;
    let params = mu_params(&table);
    let mu21 = exact(params.mu21.value as i64, params.mu21.status);
    report.push_eq("mu21", pair, None, mu21_closed_form(m, n)? as i64, mu21);
    report.push("mu21_bracket", pair, None, m as i64, mu21, |v| {
        v >= m as i64 && v <= m as i64 + 1
    });
    for row in &table.rows {
        let got = exact(row.mu2.value as i64, row.mu2.status);
        report.push("mu2_at_least_m", pair, Some(row.t), m as i64, got, |v| v >= m as i64);
    }
    if mu21_is_m_case(m, n) {
        let last = table.rows.last().expect("t = mn row");
        let got = exact(last.mu2.value as i64, last.mu2.status);
        report.push_eq("mu2_at_mn", pair, Some(last.t), m as i64, got);
    }

    verify_w_range(&g, pair, budget, report)?;

    if g.min_degree() >= 2 {
        let (tally, status) = linear_forest_sweep(&g, budget)?;
        let got = exact(tally.counterexamples as i64, status);
        report.push_eq("interval_linear_forest", pair, Some(g.edge_count() as u32), 0, got);
    }
    Ok(())
}

impl Report {
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let t = r.t.map(|t| format!(" t={t}")).unwrap_or_default();
            let got = r.got.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
            let status = match r.status {
                ClaimStatus::Pass => "pass",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Skipped => "skipped",
            };
            writeln!(
                out,
                "{:<8} {:<30} K_{{{},{}}}{:<6} expected {:>4} got {:>4}",
                status, r.claim, r.pair[0], r.pair[1], t, r.expected, got
            )
            .unwrap();
        }
        writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(ClaimStatus::Pass),
            self.count(ClaimStatus::Fail),
            self.count(ClaimStatus::Skipped)
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(mu21_closed_form(5, 1), Ok(6));
        assert_eq!(mu21_closed_form(2, 2), Ok(3));
        assert_eq!(mu21_closed_form(5, 3), Ok(5));
        assert_eq!(mu21_closed_form(3, 5), Ok(5));
        assert!(mu21_closed_form(0, 2).is_err());
        assert_eq!((w_closed(3, 3), big_w_closed(3, 3)), (Ok(3), Ok(5)));
        assert_eq!(wy_closed(5, 2), Ok(6));
        assert_eq!(w_closed(1, 1), Ok(1));
    }

    #[test]
    fn bound_chain_examples() {
        assert!(bound_chain_holds(5, 3));
        assert!(bound_chain_holds(1, 1));
        assert!(bound_chain_holds(7, 2));
        assert!(!bound_chain_holds(0, 1));
    }

    #[test]
    fn k22_table() {
        let g = Graph::complete_bipartite(2, 2).unwrap();
        let table = mu_table(&g, &SearchBudget::default()).unwrap();
        let got: Vec<(u32, usize, usize)> = table.rows.iter().map(|r| (r.t, r.mu1.value, r.mu2.value)).collect();
        assert_eq!(got, vec![(2, 4, 4), (3, 2, 4), (4, 1, 3)]);
        let p = mu_params(&table);
        assert_eq!(p.mu21.value, 3);
        assert_eq!(p.mu21.t, 4);
        assert_eq!(p.mu22.value, 4);
        assert_eq!(p.mu11.value, 1);
        assert_eq!(p.mu12.value, 4);
        assert!(p.mu21.status.is_exact());
    }

    #[test]
    fn star_table() {
        for m in 1..=5 {
            let g = Graph::complete_bipartite(m, 1).unwrap();
            let table = mu_table(&g, &SearchBudget::default()).unwrap();
            assert_eq!(table.rows.len(), 1);
            assert_eq!((table.rows[0].mu1.value, table.rows[0].mu2.value), (m + 1, m + 1));
            assert_eq!(mu_params(&table).mu21.value, m + 1);
        }
    }

    #[test]
    fn games() {
        let b = SearchBudget::default();
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        let r = game_solve(&k22, GameObjective::Mu21, &b).unwrap();
        assert_eq!((r.alice_t, r.value), (4, 3));
        assert!(search::witness_ok(&k22, r.bob_witness.as_ref().unwrap(), 3));
        let k32 = Graph::complete_bipartite(3, 2).unwrap();
        assert_eq!(game_solve(&k32, GameObjective::Mu21, &b).unwrap().value, 3);
        let star = Graph::complete_bipartite(4, 1).unwrap();
        let r = game_solve(&star, GameObjective::Mu21, &b).unwrap();
        assert_eq!((r.alice_t, r.value), (4, 5));
        let r = game_solve(&k22, GameObjective::Mu12, &b).unwrap();
        assert_eq!((r.alice_t, r.value), (2, 4));
    }

    #[test]
    fn verify_small() {
        let report = verify_suite(2, 1, &SearchBudget::default()).unwrap();
        assert!(
            report.records.iter().all(|r| r.status == ClaimStatus::Pass),
            "{}",
            report.to_human()
        );
        assert!(verify_suite(2, 3, &SearchBudget::default()).is_err());
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let g = Graph::complete_bipartite(2, 2).unwrap();
        let csv = mu_table(&g, &SearchBudget::default()).unwrap().to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(csv.lines().nth(1), Some("2,4,exact,4,exact"));
    }
}
