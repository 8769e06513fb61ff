//! Walks on ordinals: the C-sequence, the weight function ρ, its fibers and
//! the pair-valued ϱ.
//!
//! `C_α` is `{α−1}` for successors, the canonical fundamental sequence for
//! limits and empty for 0. With it,
//!
//! ```text
//! ρ(α, α) = 0
//! ρ(α, β) = max{ otp(C_β ∩ α), ρ(α, min(C_β \ α)), ρ(ξ, α) : ξ ∈ C_β ∩ α }
//! ϱ(α, β) = (ρ(α, β), |{ξ ≤ α : ρ(ξ, α) ≤ ρ(α, β)}|)
//! ```
//!
//! Results are memoized process-wide. The caches only ever receive values
//! that are already determined, so concurrent duplicate fills are harmless.

use std::collections::{BTreeSet, HashMap};
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

use crate::ordinal::{Ordinal, OrdinalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk needs {lower} ≤ {upper}")]
    NotOrdered { lower: Ordinal, upper: Ordinal },
    #[error("ϱ is defined on pairs α < β, got ({0}, {0})")]
    Diagonal(Ordinal),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// `C_owner`, as a lazily evaluated increasing sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSequenceEntry {
    owner: Ordinal,
}

impl CSequenceEntry {
    pub fn new(owner: Ordinal) -> Self {
        CSequenceEntry { owner }
    }

    pub fn owner(&self) -> &Ordinal {
        &self.owner
    }

    /// Position `j` of the sequence, or `None` past its end.
    pub fn element(&self, j: u64) -> Option<Ordinal> {
        if self.owner.is_limit() {
            Some(self.owner.fund_seq(j).expect("limit"))
        } else if self.owner.is_successor() && j == 0 {
            Some(self.owner.predecessor().expect("successor"))
        } else {
            None
        }
    }

    /// Number of elements, `None` when the sequence is infinite.
    pub fn len(&self) -> Option<u64> {
        if self.owner.is_limit() {
            None
        } else if self.owner.is_zero() {
            Some(0)
        } else {
            Some(1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_zero()
    }

    /// The elements below `a` together with `min(C \ a)` (if any).
    fn split_at(&self, a: &Ordinal) -> (Vec<Ordinal>, Option<Ordinal>) {
        let mut below = Vec::new();
        let mut j = 0;
        while let Some(x) = self.element(j) {
            if x >= *a {
                return (below, Some(x));
            }
            below.push(x);
            j += 1;
        }
        (below, None)
    }
}

/// `{ξ ≤ base : ρ(ξ, base) ≤ bound}`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSet {
    pub base: Ordinal,
    pub bound: u64,
    pub members: Vec<Ordinal>,
}

type RhoCache = RwLock<HashMap<(Ordinal, Ordinal), u64>>;
type FiberCache = RwLock<HashMap<(Ordinal, u64), Vec<Ordinal>>>;

fn rho_cache() -> &'static RhoCache {
    static CACHE: OnceLock<RhoCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn fiber_cache() -> &'static FiberCache {
    static CACHE: OnceLock<FiberCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn rho(a: &Ordinal, b: &Ordinal) -> Result<u64, WalkError> {
    if a > b {
        return Err(WalkError::NotOrdered {
            lower: a.clone(),
            upper: b.clone(),
        });
    }
    Ok(rho_ordered(a, b))
}

fn rho_ordered(a: &Ordinal, b: &Ordinal) -> u64 {
    if a == b {
        return 0;
    }
    // Successor steps of the walk never raise the weight: from λ+k the walk
    // descends to max(a, λ).
    let (limit, _) = b.split_finite();
    if *a >= limit {
        return 0;
    }
    let b = limit;
    let key = (a.clone(), b.clone());
    if let Some(&hit) = rho_cache().read().unwrap().get(&key) {
        return hit;
    }
    let (inside, next) = CSequenceEntry::new(b.clone()).split_at(a);
    let next = next.expect("fundamental sequences are cofinal");
    let mut value = (inside.len() as u64).max(rho_ordered(a, &next));
    for xi in &inside {
        value = value.max(rho_ordered(xi, a));
    }
    rho_cache().write().unwrap().insert(key, value);
    value
}

/// The fiber `{ξ ≤ a : ρ(ξ, a) ≤ n}`.
///
/// Candidates come from a closure over `C_a`: a `ξ` with
/// `C_a(j−1) < ξ ≤ C_a(j)` has `ρ(ξ, a) ≤ n` exactly when `j ≤ n`,
/// `ξ` lies in the fiber of `C_a(j)` and `ρ(C_a(l), ξ) ≤ n` for all `l < j`.
/// Every candidate is then re-checked against [`rho`].
pub fn rho_fiber(a: &Ordinal, n: u64) -> FiberSet {
    let members = fiber_members(a, n)
        .into_iter()
        .filter(|xi| rho_ordered(xi, a) <= n)
        .collect();
    FiberSet {
        base: a.clone(),
        bound: n,
        members,
    }
}

fn fiber_members(a: &Ordinal, n: u64) -> Vec<Ordinal> {
    let key = (a.clone(), n);
    if let Some(hit) = fiber_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let (limit, tail) = a.split_finite();
    let mut set: BTreeSet<Ordinal> = BTreeSet::new();
    let mut x = limit.clone();
    for _ in 0..=tail {
        set.insert(x.clone());
        x = x.successor();
    }
    if !limit.is_zero() {
        let c = CSequenceEntry::new(limit.clone());
        let mut earlier: Vec<Ordinal> = Vec::new();
        for j in 0..=n {
            let cj = c.element(j).expect("limit sequences are infinite");
            for xi in fiber_members(&cj, n) {
                if earlier.last().is_some_and(|prev| xi <= *prev) {
                    continue;
                }
                if earlier.iter().all(|cl| rho_ordered(cl, &xi) <= n) {
                    set.insert(xi);
                }
            }
            earlier.push(cj);
        }
    }
    let out: Vec<Ordinal> = set.into_iter().collect();
    fiber_cache().write().unwrap().insert(key, out.clone());
    out
}

/// `ϱ(a, b) = (ρ(a, b), otp{ξ ≤ a : ρ(ξ, a) ≤ ρ(a, b)})` for `a < b`.
pub fn varrho(a: &Ordinal, b: &Ordinal) -> Result<(u64, u64), WalkError> {
    if a == b {
        return Err(WalkError::Diagonal(a.clone()));
    }
    let weight = rho(a, b)?;
    let fiber = rho_fiber(a, weight);
    Ok((weight, fiber.members.len() as u64))
}
