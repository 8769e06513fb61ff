//! Well-connected sets and the tree orders ⊲ᵢ.
//!
//! `X` is well-connected in color `i` when every `α < β` in `X` is joined by
//! an `i`-colored path all of whose vertices are `≥ α`. Path vertices may lie
//! anywhere in the ambient domain `D`, not only in `X`. Setting `α ⊲ᵢ β` iff
//! `{α, β}` is well-connected gives a tree order, and the well-connected sets
//! are exactly its chains, so the largest ones are `pred(β) ∪ {β}`.
//!
//! For colorings generated over ordinals `D` is a finite sample of the true
//! domain. Restricting the ambient set can only remove paths: a negative
//! answer on a sample is sound, a positive one need not lift.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{Arity, ColorValue, Coloring};
use crate::graphs::{color_graph, ColorGraph, GraphError};
use crate::ordinal::{Ordinal, OrdinalDomain};

/// Largest ambient domain accepted by [`brute_force_max_wc`].
pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WellconnError {
    #[error("the candidate set is empty")]
    EmptySet,
    #[error("{0} is not in the ambient domain")]
    NotInDomain(Ordinal),
    #[error("subset enumeration is limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An `i`-colored path certifying one pair of a well-connected set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub color: ColorValue,
    pub vertices: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WcOutcome {
    /// One path per pair `α < β` of the witness set, in lexicographic pair
    /// order.
    Witness { paths: Vec<PathWitness> },
    /// The least pair without a suffix path, and everything reachable from
    /// its smaller end inside the suffix.
    Refutation {
        pair: (Ordinal, Ordinal),
        reachable: Vec<Ordinal>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcCertificate {
    pub color: ColorValue,
    pub witness: Vec<Ordinal>,
    pub outcome: WcOutcome,
}

impl WcCertificate {
    pub fn accepted(&self) -> bool {
        matches!(self.outcome, WcOutcome::Witness { .. })
    }
}

pub fn is_well_connected(
    c: &Coloring,
    color: ColorValue,
    set: &[Ordinal],
    ambient: &OrdinalDomain,
) -> Result<WcCertificate, WellconnError> {
    if set.is_empty() {
        return Err(WellconnError::EmptySet);
    }
    let mut witness = set.to_vec();
    witness.sort();
    witness.dedup();
    let g = color_graph(c, ambient, color)?;
    let idx = witness
        .iter()
        .map(|a| {
            g.index_of(a)
                .ok_or_else(|| WellconnError::NotInDomain(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut paths = Vec::new();
    for (k, &a) in idx.iter().enumerate() {
        for &b in &idx[k + 1..] {
            match g.shortest_path(a, b, a) {
                Some(p) => paths.push(PathWitness {
                    color,
                    vertices: p.iter().map(|&v| g.label(v).clone()).collect(),
                }),
                None => {
                    let reach = g.reachable(a, a)?;
                    return Ok(WcCertificate {
                        color,
                        witness,
                        outcome: WcOutcome::Refutation {
                            pair: (g.label(a).clone(), g.label(b).clone()),
                            reachable: reach.ones().map(|v| g.label(v).clone()).collect(),
                        },
                    });
                }
            }
        }
    }
    Ok(WcCertificate {
        color,
        witness,
        outcome: WcOutcome::Witness { paths },
    })
}

/// The relation ⊲ᵢ on a finite domain, as predecessor sets over vertex
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOrder {
    color: ColorValue,
    labels: Vec<Ordinal>,
    pred: Vec<FixedBitSet>,
}

impl TreeOrder {
    pub fn from_graph(g: &ColorGraph, color: ColorValue) -> TreeOrder {
        let n = g.len();
        let reach = |a: usize| g.reachable(a, a).expect("a ≥ a");
        let reached: Vec<FixedBitSet> = if n >= 64 {
            (0..n).into_par_iter().map(reach).collect()
        } else {
            (0..n).map(reach).collect()
        };
        let mut pred = vec![FixedBitSet::with_capacity(n); n];
        for (a, r) in reached.iter().enumerate() {
            for b in r.ones().filter(|&b| b > a) {
                pred[b].insert(a);
            }
        }
        TreeOrder {
            color,
            labels: g.labels().to_vec(),
            pred,
        }
    }

    pub fn color(&self) -> ColorValue {
        self.color
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

    pub fn pred(&self, b: usize) -> &FixedBitSet {
        &self.pred[b]
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.pred[b].contains(a)
    }

    /// Every predecessor set is a ⊲-chain.
    pub fn is_tree(&self) -> bool {
        (0..self.len()).all(|b| {
            let p: Vec<usize> = self.pred[b].ones().collect();
            p.iter()
                .enumerate()
                .all(|(k, &a)| p[k + 1..].iter().all(|&a2| self.precedes(a, a2)))
        })
    }

    /// Whether the given increasing indices form a ⊲-chain.
    pub fn is_chain(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &a)| vertices[k + 1..].iter().all(|&b| self.precedes(a, b)))
    }

    /// `pred(b) ∪ {b}` as indices.
    pub fn chain_to(&self, b: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.pred[b].ones().collect();
        v.push(b);
        v
    }

    fn chain_labels(&self, b: usize) -> Vec<Ordinal> {
        self.chain_to(b)
            .into_iter()
            .map(|v| self.labels[v].clone())
            .collect()
    }
}

pub fn wc_tree(
    c: &Coloring,
    ambient: &OrdinalDomain,
    color: ColorValue,
) -> Result<TreeOrder, WellconnError> {
    let g = color_graph(c, ambient, color)?;
    Ok(TreeOrder::from_graph(&g, color))
}

/// Largest well-connected set of one color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WcMax {
    pub color: ColorValue,
    pub size: usize,
    pub witness: Vec<Ordinal>,
}

/// Colors reported by [`max_wc`]: `0..arity` for a finite arity plus every
/// color realized on the ambient domain.
pub fn reported_colors(
    c: &Coloring,
    ambient: &OrdinalDomain,
) -> Result<Vec<ColorValue>, WellconnError> {
    let pos = ambient
        .elements()
        .iter()
        .map(|a| {
            c.domain()
                .index_of(a)
                .ok_or_else(|| WellconnError::NotInDomain(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut colors = std::collections::BTreeSet::new();
    if let Arity::Finite(k) = c.arity() {
        colors.extend((0..k).map(ColorValue::Scalar));
    }
    for (j, &b) in pos.iter().enumerate() {
        for &a in &pos[..j] {
            colors.insert(c.eval_index(a, b));
        }
    }
    Ok(colors.into_iter().collect())
}

/// For each reported color, `max_β |pred(β)| + 1` with the chain of the
/// least optimal `β`.
pub fn max_wc(c: &Coloring, ambient: &OrdinalDomain) -> Result<Vec<WcMax>, WellconnError> {
    reported_colors(c, ambient)?
        .into_iter()
        .map(|color| {
            let t = wc_tree(c, ambient, color)?;
            let mut best = 0;
            for b in 1..t.len() {
                if t.pred(b).count_ones(..) > t.pred(best).count_ones(..) {
                    best = b;
                }
            }
            let witness = t.chain_labels(best);
            Ok(WcMax {
                color,
                size: witness.len(),
                witness,
            })
        })
        .collect()
}

/// [`max_wc`] by testing every subset of the ambient domain against the
/// pairwise definition. Among the largest sets it reports the one with the
/// least top element.
pub fn brute_force_max_wc(
    c: &Coloring,
    ambient: &OrdinalDomain,
) -> Result<Vec<WcMax>, WellconnError> {
    let n = ambient.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(WellconnError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let labels = ambient.elements();
    let pos = labels
        .iter()
        .map(|a| {
            c.domain()
                .index_of(a)
                .ok_or_else(|| WellconnError::NotInDomain(a.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for color in reported_colors(c, ambient)? {
        let mut adj = vec![0u32; n];
        for j in 0..n {
            for i in 0..j {
                if c.eval_index(pos[i], pos[j]) == color {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        // linked[a]: the b > a joined to a by a path inside [a, n).
        let linked: Vec<u32> = (0..n)
            .map(|a| {
                let floor = !((1u32 << a) - 1);
                let mut seen = 1u32 << a;
                let mut frontier = seen;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let fresh = adj[v] & floor & !seen;
                    seen |= fresh;
                    frontier |= fresh;
                }
                seen & !(1u32 << a)
            })
            .collect();
        let mut best: (usize, usize, u32) = (0, usize::MAX, 0);
        for set in 1u32..(1u32 << n) {
            let ok = (0..n)
                .filter(|&a| set & (1 << a) != 0)
                .all(|a| (set & !((2u32 << a) - 1)) & !linked[a] == 0);
            if !ok {
                continue;
            }
            let size = set.count_ones() as usize;
            let top = 31 - set.leading_zeros() as usize;
            if size > best.0 || (size == best.0 && top < best.1) {
                best = (size, top, set);
            }
        }
        let witness: Vec<Ordinal> = (0..n)
            .filter(|&v| best.2 & (1 << v) != 0)
            .map(|v| labels[v].clone())
            .collect();
        out.push(WcMax {
            color,
            size: best.0,
            witness,
        });
    }
    Ok(out)
}

/// Maximal chains of a tree order: `pred(β) ∪ {β}` for each ⊲-maximal `β`.
pub fn branches(t: &TreeOrder) -> Vec<Vec<Ordinal>> {
    let n = t.len();
    let mut has_successor = FixedBitSet::with_capacity(n);
    for b in 0..n {
        has_successor.union_with(t.pred(b));
    }
    (0..n)
        .filter(|&b| !has_successor.contains(b))
        .map(|b| t.chain_labels(b))
        .collect()
}
