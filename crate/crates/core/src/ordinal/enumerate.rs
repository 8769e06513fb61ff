//! Canonical enumeration of the ordinals below a bound.
//!
//! Ordinals are emitted in stages: stage `t` lists, in increasing order, every
//! `ξ < b` of [`size`] `t`. Each stage is finite, so every ordinal below `b`
//! receives a finite index. Below a finite bound, and below ω, the enumeration
//! is the identity.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::seq::index;
use rand::Rng;

use super::{Ordinal, OrdinalError, Term};

/// Total coefficient sum plus nesting depth; the stage at which an ordinal
/// is enumerated.
pub fn size(a: &Ordinal) -> u64 {
    a.coefficient_sum().saturating_add(a.depth())
}

type BelowCache = HashMap<(Ordinal, u64), Rc<Vec<Ordinal>>>;

thread_local! {
    static BELOW: RefCell<BelowCache> = RefCell::new(HashMap::new());
}

/// All ordinals `< bound` whose coefficient sum is at most `budget`, unsorted.
fn below(bound: &Ordinal, budget: u64) -> Rc<Vec<Ordinal>> {
    let key = (bound.clone(), budget);
    if let Some(hit) = BELOW.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut out = Vec::new();
    if let Some(lead) = bound.terms().first() {
        out.push(Ordinal::zero());
        let top = lead.exponent.successor();
        extend(&Ordinal::zero(), &top, budget, bound, &mut out);
    }
    let out = Rc::new(out);
    BELOW.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

// Appends every ordinal `prefix + ω^e·c + …` below `bound` with exponents
// `e < exp_limit` that fits in the remaining coefficient budget.
fn extend(
    prefix: &Ordinal,
    exp_limit: &Ordinal,
    remaining: u64,
    bound: &Ordinal,
    out: &mut Vec<Ordinal>,
) {
    if remaining == 0 {
        return;
    }
    let exponents = below(exp_limit, remaining - 1);
    for e in exponents.iter() {
        let cost = e.coefficient_sum();
        if cost >= remaining {
            continue;
        }
        for c in 1..=(remaining - cost) {
            let mut next = prefix.clone();
            next.terms.push(Term {
                exponent: e.clone(),
                coefficient: c,
            });
            if next >= *bound {
                break;
            }
            extend(&next, e, remaining - cost - c, bound, out);
            out.push(next);
        }
    }
}

fn key(a: &Ordinal) -> (u64, &Ordinal) {
    (size(a), a)
}

/// The first `len` ordinals of the enumeration of `{ξ : ξ < b}` (fewer if `b`
/// is finite and smaller than `len`).
pub fn enumeration_prefix(b: &Ordinal, len: usize) -> Vec<Ordinal> {
    if let Some(n) = b.as_nat() {
        return (0..n.min(len as u64)).map(Ordinal::from_nat).collect();
    }
    let mut t = 0u64;
    loop {
        let stage = below(b, t);
        let mut upto: Vec<&Ordinal> = stage.iter().filter(|x| size(x) <= t).collect();
        if upto.len() >= len {
            upto.sort_by(|x, y| key(x).cmp(&key(y)));
            return upto.into_iter().take(len).cloned().collect();
        }
        t += 1;
    }
}

/// The `k`-th ordinal (0-indexed) below `b` in the canonical enumeration.
pub fn enumerate_below(b: &Ordinal, k: u64) -> Result<Ordinal, OrdinalError> {
    if let Some(n) = b.as_nat() {
        if k >= n {
            return Err(OrdinalError::IndexOutOfRange {
                bound: b.clone(),
                index: k,
            });
        }
        return Ok(Ordinal::from_nat(k));
    }
    let len = usize::try_from(k).map_err(|_| OrdinalError::Overflow)? + 1;
    Ok(enumeration_prefix(b, len).pop().expect("infinite bound"))
}

/// Position of `a` in the canonical enumeration of the ordinals below `b`.
pub fn enum_index(b: &Ordinal, a: &Ordinal) -> Result<u64, OrdinalError> {
    if a >= b {
        return Err(OrdinalError::NotBelow {
            value: a.clone(),
            bound: b.clone(),
        });
    }
    if b.is_finite() || *b == Ordinal::omega() {
        return Ok(a.as_nat().expect("below ω"));
    }
    let target = key(a);
    let stage = below(b, size(a));
    Ok(stage.iter().filter(|x| key(x) < target).count() as u64)
}

/// Draws `count` distinct ordinals below `bound`, returned in increasing order.
///
/// For an infinite bound the draw is uniform over the first
/// `max(4·count, 64)` ordinals of the canonical enumeration.
pub fn sample_below<R: Rng + ?Sized>(
    bound: &Ordinal,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Ordinal>, OrdinalError> {
    let pool_len = match bound.as_nat() {
        Some(n) => n as usize,
        None => (4 * count).max(64),
    };
    if count > pool_len {
        return Err(OrdinalError::IndexOutOfRange {
            bound: bound.clone(),
            index: count as u64,
        });
    }
    let pool = enumeration_prefix(bound, pool_len);
    let mut picked: Vec<Ordinal> = index::sample(rng, pool_len, count)
        .into_iter()
        .map(|i| pool[i].clone())
        .collect();
    picked.sort();
    Ok(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn identity_below_finite_and_omega() {
        assert_eq!(enum_index(&o("5"), &o("2")).unwrap(), 2);
        assert_eq!(enum_index(&o("w"), &o("7")).unwrap(), 7);
        for k in 0..40 {
            assert_eq!(enumerate_below(&o("w"), k).unwrap(), Ordinal::from_nat(k));
        }
        assert!(enumerate_below(&o("3"), 3).is_err());
    }

    #[test]
    fn rejects_elements_not_below() {
        assert!(enum_index(&o("w"), &o("w")).is_err());
        assert!(enum_index(&o("3"), &o("5")).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(size(&o("0")), 0);
        assert_eq!(size(&o("4")), 4);
        assert_eq!(size(&o("w")), 3);
        assert_eq!(size(&o("w^2")), 4);
        assert_eq!(size(&o("w^w")), 5);
    }

    #[test]
    fn below_lists_exact_sets() {
        let mut v: Vec<_> = below(&o("w+1"), 3).iter().cloned().collect();
        v.sort();
        let expect: Vec<_> = ["0", "1", "2", "3", "w"].iter().map(|s| o(s)).collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn sampling_is_sorted_and_distinct() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let s = sample_below(&o("w^2"), 25, &mut rng).unwrap();
        assert_eq!(s.len(), 25);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|x| *x < o("w^2")));
        assert!(sample_below(&o("4"), 5, &mut rng).is_err());
    }
}
