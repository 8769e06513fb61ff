//! Deciders for the finite arrows `n → (m)²_λ`, `n →_hc (m)²_λ` and
//! `n →_wc (m)²_λ`.
//!
//! Both engines search for a negative coloring: a λ-coloring of `[n]²` with
//! no monochromatic witness of size `m` (a clique for the classical and hc
//! arrows, a well-connected set for wc). Edges are assigned in column order
//! `(0,1), (0,2), (1,2), (0,3), …` and colors are canonical: each new color is
//! the least unused one, which removes the λ! color permutations. The vertex
//! order is never permuted, since well-connectedness depends on it.
//!
//! * `Exhaustive` visits every canonical coloring and tests it as a whole.
//! * `Backtrack` prunes as soon as the assigned edges already contain a
//!   witness. Witnesses only grow as edges are added, so the pruning is exact.
//!
//! In deterministic mode the search is single-threaded and the counterexample
//! is the first one in canonical order; both engines then return the same one.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{pair_offset, Coloring, ColoringError};
use crate::graphs::{color_graph, GraphError};
use crate::wellconn::{max_wc, WellconnError};

/// Largest `n` either engine accepts; vertex sets are machine-word masks.
pub const BACKTRACK_MAX_N: usize = 16;
/// Largest number of canonical colorings the exhaustive engine visits.
pub const EXHAUSTIVE_MAX_COLORINGS: u128 = 1 << 26;

#[derive(Debug, Error)]
pub enum ArrowError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("infeasible query: {0}")]
    Infeasible(String),
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("time budget of {millis} ms exhausted")]
    TimeExceeded { millis: u64 },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Wellconn(#[from] WellconnError),
}

impl ArrowError {
    /// Resource-guard failures, as opposed to malformed input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            ArrowError::Infeasible(_)
                | ArrowError::BudgetExceeded { .. }
                | ArrowError::TimeExceeded { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Classical,
    Hc,
    Wc,
}

impl fmt::Display for ArrowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowKind::Classical => "classical",
            ArrowKind::Hc => "hc",
            ArrowKind::Wc => "wc",
        })
    }
}

impl FromStr for ArrowKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(ArrowKind::Classical),
            "hc" => Ok(ArrowKind::Hc),
            "wc" => Ok(ArrowKind::Wc),
            _ => Err(format!("unknown arrow kind '{s}' (classical, hc, wc)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exhaustive,
    Backtrack,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Exhaustive => "exhaustive",
            Engine::Backtrack => "backtrack",
        })
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Engine::Exhaustive),
            "backtrack" => Ok(Engine::Backtrack),
            _ => Err(format!("unknown engine '{s}' (exhaustive, backtrack)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowQuery {
    pub kind: ArrowKind,
    pub n: usize,
    pub m: usize,
    pub colors: usize,
    pub engine: Engine,
    pub deterministic: bool,
    /// Abort with [`ArrowError::BudgetExceeded`] after this many search nodes.
    #[serde(
        rename = "node-budget",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub node_budget: Option<u64>,
    /// Abort with [`ArrowError::TimeExceeded`] after this many milliseconds.
    #[serde(skip)]
    pub time_budget_ms: Option<u64>,
}

impl ArrowQuery {
    pub fn new(kind: ArrowKind, n: usize, m: usize, colors: usize) -> Self {
        ArrowQuery {
            kind,
            n,
            m,
            colors,
            engine: Engine::Backtrack,
            deterministic: true,
            node_budget: None,
            time_budget_ms: None,
        }
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    /// `wc 4->(3)^2_2`.
    pub fn notation(&self) -> String {
        format!("{} {}->({})^2_{}", self.kind, self.n, self.m, self.colors)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    /// Complete colorings examined.
    pub leaves: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    /// Canonical colorings the exhaustive engine visited.
    #[serde(rename = "colorings-visited")]
    pub colorings_visited: u64,
    /// Least, over visited colorings, of the largest monochromatic witness
    /// (clique size for classical/hc, chain size for wc).
    #[serde(rename = "min-max-witness")]
    pub min_max_witness: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ArrowVerdict {
    pub query: ArrowQuery,
    pub holds: bool,
    pub counterexample: Option<Coloring>,
    pub witness_stats: WitnessStats,
    pub stats: SearchStats,
}

impl ArrowVerdict {
    /// `HOLDS wc 4->(3)^2_2` / `FAILS …`.
    pub fn summary(&self) -> String {
        format!(
            "{} {}",
            if self.holds { "HOLDS" } else { "FAILS" },
            self.query.notation()
        )
    }
}

/// Number of canonical λ-colorings of `edges` edges: restricted growth
/// strings with at most `colors` distinct values, saturating.
pub fn canonical_coloring_count(edges: usize, colors: usize) -> u128 {
    // row[k] = S(e, k), Stirling numbers of the second kind.
    let mut row = vec![0u128; colors + 1];
    row[0] = 1;
    for _ in 0..edges {
        for k in (1..=colors).rev() {
            row[k] = (k as u128)
                .saturating_mul(row[k])
                .saturating_add(row[k - 1]);
        }
        row[0] = 0;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

fn check_feasible(q: &ArrowQuery) -> Result<(), ArrowError> {
    match q.engine {
        _ if q.n > BACKTRACK_MAX_N => Err(ArrowError::Infeasible(format!(
            "search supports n ≤ {BACKTRACK_MAX_N}, got {}",
            q.n
        ))),
        Engine::Exhaustive => {
            let count = canonical_coloring_count(q.n * (q.n - 1) / 2, q.colors);
            if count > EXHAUSTIVE_MAX_COLORINGS {
                Err(ArrowError::Infeasible(format!(
                    "{count} canonical colorings exceed the exhaustive limit of 2^26"
                )))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

pub fn decide_arrow(q: &ArrowQuery) -> Result<ArrowVerdict, ArrowError> {
    let start = Instant::now();
    if q.n == 0 || q.m == 0 || q.colors == 0 {
        return Err(ArrowError::InvalidQuery(
            "n, m and colors must be at least 1".into(),
        ));
    }
    if q.colors > 255 {
        return Err(ArrowError::InvalidQuery("at most 255 colors".into()));
    }
    let trivial = |holds: bool, counterexample: Option<Coloring>| ArrowVerdict {
        query: *q,
        holds,
        counterexample,
        witness_stats: WitnessStats::default(),
        stats: SearchStats {
            elapsed: start.elapsed(),
            ..SearchStats::default()
        },
    };
    if q.m == 1 {
        return Ok(trivial(true, None));
    }
    if q.m > q.n {
        let c = Coloring::from_fn(q.n, q.colors as u64, |_, _| 0)?;
        return Ok(trivial(false, Some(c)));
    }
    check_feasible(q)?;

    let search = Search::new(q);
    let found = search.run();
    if search.over_time.load(Ordering::Relaxed) {
        return Err(ArrowError::TimeExceeded {
            millis: q.time_budget_ms.unwrap_or(0),
        });
    }
    if search.over_budget.load(Ordering::Relaxed) {
        return Err(ArrowError::BudgetExceeded {
            budget: q.node_budget.unwrap_or(0),
        });
    }
    let counterexample = match found {
        Some(assign) => {
            let c = Coloring::from_fn(q.n, q.colors as u64, |i, j| {
                u64::from(assign[pair_offset(i, j)])
            })?;
            if !verify_counterexample(&c, q.m, q.kind)? {
                return Err(ArrowError::Internal(format!(
                    "search returned a coloring with a size-{} witness",
                    q.m
                )));
            }
            Some(c)
        }
        None => None,
    };
    let leaves = search.leaves.load(Ordering::Relaxed);
    let min_max = search.min_max.load(Ordering::Relaxed);
    Ok(ArrowVerdict {
        query: *q,
        holds: counterexample.is_none(),
        counterexample,
        witness_stats: WitnessStats {
            colorings_visited: if q.engine == Engine::Exhaustive {
                leaves
            } else {
                0
            },
            min_max_witness: (q.engine == Engine::Exhaustive && min_max != usize::MAX)
                .then_some(min_max),
        },
        stats: SearchStats {
            nodes: search.nodes.load(Ordering::Relaxed),
            prunes: search.prunes.load(Ordering::Relaxed),
            leaves,
            elapsed: start.elapsed(),
        },
    })
}

/// True iff no color of `c` has a monochromatic witness of size `m` of the
/// given kind. Uses the graph and well-connectedness modules, not the search.
pub fn verify_counterexample(c: &Coloring, m: usize, kind: ArrowKind) -> Result<bool, ArrowError> {
    if m > c.len() {
        return Ok(true);
    }
    if m <= 1 {
        return Ok(false);
    }
    let domain = c.domain().clone();
    match kind {
        ArrowKind::Classical | ArrowKind::Hc => {
            for color in crate::wellconn::reported_colors(c, &domain)? {
                let g = color_graph(c, &domain, color)?;
                if g.max_clique().0 >= m {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ArrowKind::Wc => Ok(max_wc(c, &domain)?.iter().all(|x| x.size < m)),
    }
}

/// `colors·(m−2) + 2`: the top vertex of that many has `colors·(m−2)+1`
/// neighbors below it, `m−1` of them share a color, and those together with
/// the top vertex form a ⊲-chain.
pub fn wc_pigeonhole_bound(m: usize, colors: usize) -> Result<usize, ArrowError> {
    if m < 2 {
        return Err(ArrowError::InvalidQuery(format!(
            "pigeonhole bound needs m ≥ 2, got {m}"
        )));
    }
    Ok(colors * (m - 2) + 2)
}

#[derive(Debug, Clone)]
pub struct RamseyScan {
    /// Least `n ≤ n_max` for which the arrow holds.
    pub value: Option<usize>,
    pub verdicts: Vec<ArrowVerdict>,
}

/// Scans `n = 1, 2, …, n_max` and stops at the first `n` where the arrow holds.
pub fn ramsey_number(
    kind: ArrowKind,
    m: usize,
    colors: usize,
    n_max: usize,
    engine: Engine,
) -> Result<RamseyScan, ArrowError> {
    let mut verdicts = Vec::new();
    for n in 1..=n_max {
        let v = decide_arrow(&ArrowQuery::new(kind, n, m, colors).with_engine(engine))?;
        let holds = v.holds;
        verdicts.push(v);
        if holds {
            return Ok(RamseyScan {
                value: Some(n),
                verdicts,
            });
        }
    }
    Ok(RamseyScan {
        value: None,
        verdicts,
    })
}

// ---------------------------------------------------------------------------
// Search core. Vertex sets are u32 masks; `adj[color * n + v]` holds the
// color-`color` neighbors of `v` among the edges assigned so far.

#[derive(Clone)]
struct State {
    adj: Vec<u32>,
    assign: Vec<u8>,
    used: usize,
}

struct Search<'q> {
    q: &'q ArrowQuery,
    edges: Vec<(usize, usize)>,
    /// All `m`-subsets of the vertices, for the hc cut check.
    m_subsets: Vec<u32>,
    nodes: AtomicU64,
    prunes: AtomicU64,
    leaves: AtomicU64,
    min_max: AtomicUsize,
    stop: AtomicBool,
    over_budget: AtomicBool,
    over_time: AtomicBool,
    deadline: Option<Instant>,
}

impl<'q> Search<'q> {
    fn new(q: &'q ArrowQuery) -> Self {
        let edges = (1..q.n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let m_subsets = if q.kind == ArrowKind::Hc && q.engine == Engine::Exhaustive {
            (0u32..(1 << q.n))
                .filter(|s| s.count_ones() as usize == q.m)
                .collect()
        } else {
            Vec::new()
        };
        Search {
            q,
            edges,
            m_subsets,
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            leaves: AtomicU64::new(0),
            min_max: AtomicUsize::new(usize::MAX),
            stop: AtomicBool::new(false),
            over_budget: AtomicBool::new(false),
            over_time: AtomicBool::new(false),
            deadline: q
                .time_budget_ms
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
        }
    }

    fn root(&self) -> State {
        State {
            adj: vec![0; self.q.colors * self.q.n],
            assign: vec![0; self.edges.len()],
            used: 0,
        }
    }

    fn run(&self) -> Option<Vec<u8>> {
        let mut root = self.root();
        let parallel = !self.q.deterministic && rayon::current_num_threads() > 1;
        if !parallel {
            return self.dfs(&mut root, 0);
        }
        let depth = self.edges.len().min(10);
        let mut prefixes = Vec::new();
        if let Some(found) = self.collect_prefixes(&mut root, 0, depth, &mut prefixes) {
            return Some(found);
        }
        prefixes
            .into_par_iter()
            .find_map_any(|mut st| self.dfs(&mut st, depth))
    }

    fn tick(&self) -> bool {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.q.node_budget.is_some_and(|b| nodes > b) {
            self.over_budget.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        if nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.over_time.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn set(&self, st: &mut State, e: usize, color: usize) {
        let (a, b) = self.edges[e];
        let n = self.q.n;
        st.assign[e] = color as u8;
        st.adj[color * n + a] |= 1 << b;
        st.adj[color * n + b] |= 1 << a;
    }

    fn unset(&self, st: &mut State, e: usize, color: usize) {
        let (a, b) = self.edges[e];
        let n = self.q.n;
        st.adj[color * n + a] &= !(1 << b);
        st.adj[color * n + b] &= !(1 << a);
    }

    // Tries each admissible color for edge `e`, calling `visit` on the
    // resulting state unless the backtrack engine prunes it.
    fn branch<T>(
        &self,
        st: &mut State,
        e: usize,
        mut visit: impl FnMut(&mut State) -> Option<T>,
    ) -> Option<T> {
        let limit = self.q.colors.min(st.used + 1);
        for color in 0..limit {
            self.set(st, e, color);
            let saved = st.used;
            st.used = st.used.max(color + 1);
            let result = if self.q.engine == Engine::Backtrack && self.creates_witness(st, e, color)
            {
                self.prunes.fetch_add(1, Ordering::Relaxed);
                None
            } else {
                visit(st)
            };
            st.used = saved;
            self.unset(st, e, color);
            if result.is_some() {
                return result;
            }
        }
        None
    }

    fn dfs(&self, st: &mut State, e: usize) -> Option<Vec<u8>> {
        if !self.tick() {
            return None;
        }
        if e == self.edges.len() {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            return match self.q.engine {
                Engine::Backtrack => Some(st.assign.clone()),
                Engine::Exhaustive => (!self.leaf_has_witness(st)).then(|| st.assign.clone()),
            };
        }
        self.branch(st, e, |st| self.dfs(st, e + 1))
    }

    // Surviving states after the first `depth` edges, in canonical order.
    // Returns early if a complete counterexample turns up on the way.
    fn collect_prefixes(
        &self,
        st: &mut State,
        e: usize,
        depth: usize,
        out: &mut Vec<State>,
    ) -> Option<Vec<u8>> {
        if e == depth {
            if depth == self.edges.len() {
                return self.dfs(st, e);
            }
            out.push(st.clone());
            return None;
        }
        if !self.tick() {
            return None;
        }
        self.branch(st, e, |st| self.collect_prefixes(st, e + 1, depth, out))
    }

    fn color_adj<'s>(&self, st: &'s State, color: usize) -> &'s [u32] {
        &st.adj[color * self.q.n..(color + 1) * self.q.n]
    }

    // Whether the assignment just made to edge `e` completes a witness.
    fn creates_witness(&self, st: &State, e: usize, color: usize) -> bool {
        let adj = self.color_adj(st, color);
        match self.q.kind {
            ArrowKind::Classical | ArrowKind::Hc => {
                let (a, b) = self.edges[e];
                has_clique(adj, adj[a] & adj[b], self.q.m - 2)
            }
            ArrowKind::Wc => max_chain(adj, self.q.n) >= self.q.m,
        }
    }

    fn leaf_has_witness(&self, st: &State) -> bool {
        let n = self.q.n;
        let full = full_mask(n);
        let mut best = 0;
        let mut found = false;
        for color in 0..st.used {
            let adj = self.color_adj(st, color);
            let size = match self.q.kind {
                ArrowKind::Wc => max_chain(adj, n),
                _ => max_clique_size(adj, full),
            };
            best = best.max(size);
            found |= match self.q.kind {
                ArrowKind::Hc => self
                    .m_subsets
                    .iter()
                    .any(|&s| highly_connected_by_cuts(adj, s)),
                _ => size >= self.q.m,
            };
        }
        self.min_max.fetch_min(best, Ordering::Relaxed);
        found
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Whether `candidates` contains a clique of size `k`.
fn has_clique(adj: &[u32], candidates: u32, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if (candidates.count_ones() as usize) < k {
        return false;
    }
    let mut rest = candidates;
    while rest != 0 {
        if (rest.count_ones() as usize) < k {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adj, rest & adj[v], k - 1) {
            return true;
        }
    }
    false
}

fn max_clique_size(adj: &[u32], candidates: u32) -> usize {
    let mut k = 1;
    while has_clique(adj, candidates, k + 1) {
        k += 1;
    }
    k
}

/// `max_β |pred(β)| + 1` for the tree order of this color class.
fn max_chain(adj: &[u32], n: usize) -> usize {
    let mut preds = [0usize; 32];
    for a in 0..n {
        let floor = full_mask(n) & !((1u32 << a) - 1);
        let mut seen = 1u32 << a;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & floor & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        let mut above = seen & !(1u32 << a);
        while above != 0 {
            preds[above.trailing_zeros() as usize] += 1;
            above &= above - 1;
        }
    }
    1 + preds[..n].iter().copied().max().unwrap_or(0)
}

/// The subgraph induced on `set` stays connected after deleting any proper
/// subset of its vertices.
fn highly_connected_by_cuts(adj: &[u32], set: u32) -> bool {
    // Enumerate the surviving vertex sets: every nonempty submask.
    let mut kept = set;
    while kept != 0 {
        let start = kept.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & kept & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        if seen != kept {
            return false;
        }
        kept = (kept - 1) & set;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decide(kind: ArrowKind, n: usize, m: usize, colors: usize, engine: Engine) -> ArrowVerdict {
        decide_arrow(&ArrowQuery::new(kind, n, m, colors).with_engine(engine)).unwrap()
    }

    #[test]
    fn canonical_counts() {
        assert_eq!(canonical_coloring_count(0, 2), 1);
        assert_eq!(canonical_coloring_count(3, 2), 4);
        assert_eq!(canonical_coloring_count(15, 2), 1 << 14);
        // Bell number B_4 = 15.
        assert_eq!(canonical_coloring_count(4, 4), 15);
        // 1 + S(10,2) + S(10,3) = 1 + 511 + 9330.
        assert_eq!(canonical_coloring_count(10, 3), 9842);
    }

    #[test]
    fn small_verdicts() {
        for engine in [Engine::Exhaustive, Engine::Backtrack] {
            assert!(decide(ArrowKind::Classical, 6, 3, 2, engine).holds);
            assert!(!decide(ArrowKind::Classical, 5, 3, 2, engine).holds);
            assert!(decide(ArrowKind::Wc, 4, 3, 2, engine).holds);
            let v = decide(ArrowKind::Wc, 3, 3, 2, engine);
            assert!(!v.holds);
            let c = v.counterexample.unwrap();
            assert_eq!(
                c.table().iter().map(|x| x.index()).collect::<Vec<_>>(),
                vec![0, 0, 1]
            );
            assert!(!decide(ArrowKind::Hc, 5, 3, 2, engine).holds);
        }
    }

    #[test]
    fn degenerate_queries() {
        let v = decide(ArrowKind::Wc, 3, 1, 2, Engine::Backtrack);
        assert!(v.holds && v.counterexample.is_none());
        let v = decide(ArrowKind::Classical, 2, 3, 2, Engine::Backtrack);
        assert!(!v.holds);
        assert!(
            verify_counterexample(v.counterexample.as_ref().unwrap(), 3, ArrowKind::Classical)
                .unwrap()
        );
        assert!(decide_arrow(&ArrowQuery::new(ArrowKind::Wc, 0, 2, 2)).is_err());
        let big = ArrowQuery::new(ArrowKind::Wc, 17, 3, 2);
        assert!(decide_arrow(&big).unwrap_err().is_resource_guard());
        let big = ArrowQuery::new(ArrowKind::Wc, 9, 3, 2).with_engine(Engine::Exhaustive);
        assert!(decide_arrow(&big).unwrap_err().is_resource_guard());
    }

    #[test]
    fn node_budget() {
        let mut q = ArrowQuery::new(ArrowKind::Classical, 6, 3, 2);
        q.node_budget = Some(10);
        assert!(matches!(
            decide_arrow(&q),
            Err(ArrowError::BudgetExceeded { budget: 10 })
        ));
    }

    #[test]
    fn pigeonhole_bound_values() {
        assert_eq!(wc_pigeonhole_bound(3, 2).unwrap(), 4);
        assert_eq!(wc_pigeonhole_bound(2, 7).unwrap(), 2);
        assert_eq!(wc_pigeonhole_bound(3, 3).unwrap(), 5);
        assert!(wc_pigeonhole_bound(1, 2).is_err());
    }

    #[test]
    fn mask_helpers() {
        // 5-cycle.
        let adj = [0b10010, 0b00101, 0b01010, 0b10100, 0b01001];
        assert_eq!(max_clique_size(&adj, 0b11111), 2);
        assert_eq!(max_chain(&adj, 5), 5);
        assert!(!highly_connected_by_cuts(&adj, 0b00111));
        assert!(highly_connected_by_cuts(&adj, 0b00011));
        let k3 = [0b110, 0b101, 0b011];
        assert!(highly_connected_by_cuts(&k3, 0b111));
    }
}
