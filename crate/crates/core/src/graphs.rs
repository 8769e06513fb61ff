//! Monochromatic graphs of a coloring and the finite graph algorithms run on
//! them: suffix-restricted reachability, vertex connectivity, maximum clique
//! and the highly-connected predicate.
//!
//! All inner loops work on vertex indices; ordinal labels only appear at the
//! API boundary. Indices are order-isomorphic to labels.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::colorings::{ColorValue, Coloring};
use crate::ordinal::{Ordinal, OrdinalDomain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{0} is not in the coloring's domain")]
    DomainMismatch(Ordinal),
    #[error("start vertex {start} is below the floor {floor}")]
    StartBelowFloor { start: usize, floor: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorGraph {
    labels: Vec<Ordinal>,
    adj: Vec<FixedBitSet>,
}

/// The graph on `sub` whose edges are the pairs colored `color` by `c`.
pub fn color_graph(
    c: &Coloring,
    sub: &OrdinalDomain,
    color: ColorValue,
) -> Result<ColorGraph, GraphError> {
    let labels = sub.elements();
    let positions = labels
        .iter()
        .map(|a| {
            c.domain()
                .index_of(a)
                .ok_or_else(|| GraphError::DomainMismatch(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = labels.len();
    let mut g = ColorGraph {
        labels,
        adj: vec![FixedBitSet::with_capacity(n); n],
    };
    for j in 1..n {
        for i in 0..j {
            if c.eval_index(positions[i], positions[j]) == color {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

impl ColorGraph {
    /// Graph on `{0, …, n−1}` labelled by the natural numbers.
    pub fn new(n: usize) -> Self {
        ColorGraph {
            labels: (0..n as u64).map(Ordinal::from_nat).collect(),
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = ColorGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = ColorGraph::new(n);
        for j in 1..n {
            for i in 0..j {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "graphs are irreflexive");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Ordinal] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Ordinal {
        &self.labels[v]
    }

    pub fn index_of(&self, a: &Ordinal) -> Option<usize> {
        self.labels.binary_search(a).ok()
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Subgraph induced on the given increasing vertex indices.
    pub fn induced(&self, vertices: &[usize]) -> ColorGraph {
        let mut g = ColorGraph {
            labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
            adj: vec![FixedBitSet::with_capacity(vertices.len()); vertices.len()],
        };
        for (j, &b) in vertices.iter().enumerate() {
            for (i, &a) in vertices[..j].iter().enumerate() {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertices reachable from `start` along paths that stay at indices
    /// `≥ floor`. Always contains `start`.
    pub fn reachable(&self, start: usize, floor: usize) -> Result<FixedBitSet, GraphError> {
        if start >= self.len() {
            return Err(GraphError::OutOfRange(start));
        }
        if start < floor {
            return Err(GraphError::StartBelowFloor { start, floor });
        }
        let mut seen = FixedBitSet::with_capacity(self.len());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].ones() {
                if w >= floor && !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        Ok(seen)
    }

    /// Shortest path `start → target` through indices `≥ floor`; among
    /// shortest paths the one found by a BFS that scans neighbors in
    /// increasing index order.
    pub fn shortest_path(&self, start: usize, target: usize, floor: usize) -> Option<Vec<usize>> {
        if start < floor || target < floor {
            return None;
        }
        let n = self.len();
        let mut parent = vec![usize::MAX; n];
        parent[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == target {
                let mut path = vec![target];
                let mut x = target;
                while x != start {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[v].ones() {
                if w >= floor && parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty()
            || self
                .reachable(0, 0)
                .map(|r| r.count_ones(..) == self.len())
                .unwrap_or(false)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.adj.iter().all(|s| s.count_ones(..) + 1 == n)
    }

    /// Minimum number of vertices whose removal disconnects the graph; `n−1`
    /// for the complete graph and 0 for a disconnected one.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.len();
        if n <= 1 || self.is_complete() {
            return n.saturating_sub(1);
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = n - 1;
        for s in 0..n {
            for t in s + 1..n {
                if !self.has_edge(s, t) {
                    best = best.min(self.local_connectivity(s, t, best));
                }
            }
        }
        best
    }

    /// Maximum number of internally vertex-disjoint s–t paths (s, t
    /// non-adjacent), capped at `cap`. Unit-capacity max-flow on the split
    /// graph, `v_in = 2v`, `v_out = 2v + 1`.
    fn local_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        let n = self.len();
        let m = 2 * n;
        let big = n as i32;
        let mut residual = vec![vec![0i32; m]; m];
        for v in 0..n {
            residual[2 * v][2 * v + 1] = if v == s || v == t { big } else { 1 };
            for w in self.adj[v].ones() {
                residual[2 * v + 1][2 * w] = big;
            }
        }
        let (source, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < cap {
            let mut parent = vec![usize::MAX; m];
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for v in 0..m {
                    if parent[v] == usize::MAX && residual[u][v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut v = sink;
            while v != source {
                let u = parent[v];
                residual[u][v] -= 1;
                residual[v][u] += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }

    /// Highly connected: still connected after deleting any fewer than `n`
    /// vertices. A finite graph has this property exactly when it is complete.
    pub fn is_highly_connected(&self) -> bool {
        self.is_complete()
    }

    /// The defining check of [`is_highly_connected`](Self::is_highly_connected),
    /// by enumerating every deletion set of fewer than `n` vertices.
    ///
    /// # Panics
    /// For graphs with more than 20 vertices.
    pub fn is_highly_connected_by_cuts(&self) -> bool {
        let n = self.len();
        assert!(n <= 20, "cut enumeration limited to 20 vertices");
        (0u32..(1 << n))
            .filter(|d| (d.count_ones() as usize) < n)
            .all(|deleted| {
                let kept: Vec<usize> = (0..n).filter(|v| deleted & (1 << v) == 0).collect();
                self.induced(&kept).is_connected()
            })
    }

    /// Exact maximum clique by branch and bound with a greedy coloring bound.
    /// Ties go to the lexicographically least vertex list.
    pub fn max_clique(&self) -> (usize, Vec<usize>) {
        let mut best = Vec::new();
        let mut current = Vec::new();
        let mut all = FixedBitSet::with_capacity(self.len());
        all.insert_range(..);
        self.expand_clique(&mut current, all, &mut best);
        (best.len(), best)
    }

    fn expand_clique(
        &self,
        current: &mut Vec<usize>,
        mut candidates: FixedBitSet,
        best: &mut Vec<usize>,
    ) {
        if candidates.is_clear() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
            return;
        }
        if current.len() + self.greedy_color_bound(&candidates) <= best.len() {
            return;
        }
        let order: Vec<usize> = candidates.ones().collect();
        for v in order {
            if current.len() + candidates.count_ones(..) <= best.len() {
                return;
            }
            let mut next = candidates.clone();
            next.intersect_with(&self.adj[v]);
            current.push(v);
            self.expand_clique(current, next, best);
            current.pop();
            candidates.set(v, false);
        }
    }

    // Number of color classes in a greedy proper coloring of the candidates;
    // an upper bound on any clique among them.
    fn greedy_color_bound(&self, candidates: &FixedBitSet) -> usize {
        let mut uncolored = candidates.clone();
        let mut classes = 0;
        while !uncolored.is_clear() {
            classes += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.ones().next() {
                uncolored.set(v, false);
                available.set(v, false);
                available.difference_with(&self.adj[v]);
            }
        }
        classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle5() -> ColorGraph {
        ColorGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    fn bits(s: &FixedBitSet) -> Vec<usize> {
        s.ones().collect()
    }

    #[test]
    fn pentagon_color_graphs() {
        let c = Coloring::from_fn(5, 2, |i, j| u64::from(!(j - i == 1 || j - i == 4))).unwrap();
        let d = c.domain().clone();
        assert_eq!(
            color_graph(&c, &d, ColorValue::Scalar(0)).unwrap(),
            cycle5()
        );
        let star = ColorGraph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        assert_eq!(color_graph(&c, &d, ColorValue::Scalar(1)).unwrap(), star);
        assert_eq!(
            color_graph(&c, &d, ColorValue::Scalar(7))
                .unwrap()
                .edge_count(),
            0
        );
        let outside = OrdinalDomain::initial(6).unwrap();
        assert!(matches!(
            color_graph(&c, &outside, ColorValue::Scalar(0)),
            Err(GraphError::DomainMismatch(_))
        ));
    }

    #[test]
    fn reachability() {
        let g = cycle5();
        assert_eq!(bits(&g.reachable(1, 1).unwrap()), vec![1, 2, 3, 4]);
        assert_eq!(bits(&g.reachable(0, 0).unwrap()), vec![0, 1, 2, 3, 4]);
        assert_eq!(bits(&ColorGraph::new(3).reachable(2, 0).unwrap()), vec![2]);
        assert_eq!(
            g.reachable(0, 1),
            Err(GraphError::StartBelowFloor { start: 0, floor: 1 })
        );
        assert_eq!(g.reachable(9, 0), Err(GraphError::OutOfRange(9)));
    }

    #[test]
    fn shortest_paths_prefer_small_indices() {
        let g = ColorGraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.shortest_path(0, 3, 0), Some(vec![0, 1, 3]));
        assert_eq!(g.shortest_path(1, 2, 1), Some(vec![1, 3, 2]));
        assert_eq!(g.shortest_path(1, 2, 2), None);
    }

    #[test]
    fn connectivity() {
        assert_eq!(ColorGraph::complete(5).vertex_connectivity(), 4);
        assert_eq!(cycle5().vertex_connectivity(), 2);
        assert_eq!(ColorGraph::new(2).vertex_connectivity(), 0);
        assert_eq!(ColorGraph::new(1).vertex_connectivity(), 0);
        // Two triangles sharing vertex 2.
        let bowtie = ColorGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(bowtie.vertex_connectivity(), 1);
    }

    #[test]
    fn highly_connected() {
        assert!(ColorGraph::complete(4).is_highly_connected());
        assert!(!cycle5().is_highly_connected());
        assert!(ColorGraph::new(1).is_highly_connected());
        assert!(ColorGraph::complete(4).is_highly_connected_by_cuts());
        assert!(!cycle5().is_highly_connected_by_cuts());
        assert!(ColorGraph::new(1).is_highly_connected_by_cuts());
        assert!(!ColorGraph::new(2).is_highly_connected_by_cuts());
    }

    #[test]
    fn cliques() {
        assert_eq!(ColorGraph::complete(4).max_clique(), (4, vec![0, 1, 2, 3]));
        assert_eq!(cycle5().max_clique(), (2, vec![0, 1]));
        assert_eq!(ColorGraph::new(3).max_clique(), (1, vec![0]));
        let g =
            ColorGraph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5), (0, 5)]);
        assert_eq!(g.max_clique(), (3, vec![1, 2, 3]));
    }
}
