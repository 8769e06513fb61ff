//! Pair colorings `c : [D]² → λ` over a finite ordinal domain.
//!
//! A coloring is either a dense upper-triangular matrix or one of the
//! generated families (Erdős–Kakutani, ϱ, highest-differing-bit, seeded
//! random). Generated values are computed on demand and memoized.

mod file;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{enum_index, DomainError, Ordinal, OrdinalDomain};
use crate::walks::{varrho, WalkError};

pub use file::{load_coloring, save_coloring, FileError};

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("colorings are undefined on the diagonal ({0}, {0})")]
    Diagonal(Ordinal),
    #[error("{0} is not in the coloring's domain")]
    NotInDomain(Ordinal),
    #[error("color {color} is out of range for arity {arity}")]
    ColorOutOfRange { color: u64, arity: u64 },
    #[error("matrix has {found} entries, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}

/// A color. Pair colors are ordered and indexed through the diagonal pairing
/// `(u, v) ↦ (u+v)(u+v+1)/2 + v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColorValue {
    Scalar(u64),
    Pair(u64, u64),
}

impl ColorValue {
    /// Scalar index used by the graph and search layers.
    pub fn index(self) -> u64 {
        match self {
            ColorValue::Scalar(k) => k,
            ColorValue::Pair(u, v) => encode_pair(u, v),
        }
    }
}

impl PartialOrd for ColorValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColorValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for ColorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorValue::Scalar(k) => write!(f, "{k}"),
            ColorValue::Pair(u, v) => write!(f, "({u},{v})"),
        }
    }
}

impl std::str::FromStr for ColorValue {
    type Err = String;

    /// Accepts `7`, `(3,4)` or `3,4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let num = |p: &str| p.parse::<u64>().map_err(|_| format!("invalid color '{s}'"));
        match parts.as_slice() {
            [k] if inner.len() == t.len() => Ok(ColorValue::Scalar(num(k)?)),
            [u, v] => Ok(ColorValue::Pair(num(u)?, num(v)?)),
            _ => Err(format!("invalid color '{s}'")),
        }
    }
}

pub fn encode_pair(u: u64, v: u64) -> u64 {
    let s = u + v;
    s * (s + 1) / 2 + v
}

pub fn decode_pair(k: u64) -> (u64, u64) {
    // Largest s with s(s+1)/2 ≤ k.
    let mut s = (((8.0 * k as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while s * (s + 1) / 2 > k {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= k {
        s += 1;
    }
    let v = k - s * (s + 1) / 2;
    (s - v, v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Finite(u64),
    Unbounded,
}

impl Arity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Arity::Finite(k) => Some(k),
            Arity::Unbounded => None,
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Finite(k) => write!(f, "{k}"),
            Arity::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `c(α, β) = b_β(α)` with `b_β` the canonical enumeration of β.
    Ek,
    /// `c(α, β) = ϱ(α, β)`.
    Varrho,
    /// Index of the highest differing bit over `{0, …, 2^bits − 1}`.
    Delta { bits: u32 },
    /// Seeded ChaCha8 draws, one per pair in column order.
    Random { seed: u64, arity: u64 },
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ek => "ek",
            Family::Varrho => "varrho",
            Family::Delta { .. } => "delta",
            Family::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Upper triangle in column order: `c(0,1), c(0,2), c(1,2), c(0,3), …`.
    Dense(Vec<ColorValue>),
    Generated(Family),
}

/// Position of the pair `i < j` in column order.
pub fn pair_offset(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

pub struct Coloring {
    domain: OrdinalDomain,
    arity: Arity,
    source: Source,
    table: OnceLock<Vec<ColorValue>>,
    memo: Mutex<HashMap<(usize, usize), ColorValue>>,
}

impl Clone for Coloring {
    fn clone(&self) -> Self {
        Coloring {
            domain: self.domain.clone(),
            arity: self.arity,
            source: self.source.clone(),
            table: self.table.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("domain", &self.domain)
            .field("arity", &self.arity)
            .field("source", &self.source)
            .finish()
    }
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.arity == other.arity && self.source == other.source
    }
}

impl Coloring {
    /// Dense coloring from an explicit column-order table.
    pub fn dense(
        domain: OrdinalDomain,
        arity: u64,
        values: Vec<ColorValue>,
    ) -> Result<Self, ColoringError> {
        let n = domain.len();
        let expected = n * (n - 1) / 2;
        if values.len() != expected {
            return Err(ColoringError::SizeMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| v.index() >= arity) {
            return Err(ColoringError::ColorOutOfRange {
                color: bad.index(),
                arity,
            });
        }
        let table = OnceLock::new();
        let _ = table.set(values.clone());
        Ok(Coloring {
            domain,
            arity: Arity::Finite(arity),
            source: Source::Dense(values),
            table,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// Dense coloring of `{0, …, n−1}` with `c(i, j) = f(i, j)` for `i < j`.
    pub fn from_fn(
        n: usize,
        arity: u64,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Result<Self, ColoringError> {
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                values.push(ColorValue::Scalar(f(i, j)));
            }
        }
        Coloring::dense(OrdinalDomain::initial(n)?, arity, values)
    }

    fn generated(domain: OrdinalDomain, arity: Arity, family: Family) -> Self {
        Coloring {
            domain,
            arity,
            source: Source::Generated(family),
            table: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn domain(&self) -> &OrdinalDomain {
        &self.domain
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.source, Source::Dense(_))
    }

    /// `c(a, b)` for distinct domain elements.
    pub fn eval(&self, a: &Ordinal, b: &Ordinal) -> Result<ColorValue, ColoringError> {
        if a == b {
            return Err(ColoringError::Diagonal(a.clone()));
        }
        let i = self.position(a)?;
        let j = self.position(b)?;
        Ok(self.eval_index(i, j))
    }

    fn position(&self, a: &Ordinal) -> Result<usize, ColoringError> {
        self.domain
            .index_of(a)
            .ok_or_else(|| ColoringError::NotInDomain(a.clone()))
    }

    /// `c` on domain positions; symmetric.
    ///
    /// # Panics
    /// If `i == j` or either position is outside the domain.
    pub fn eval_index(&self, i: usize, j: usize) -> ColorValue {
        assert!(i != j, "diagonal pair ({i}, {i})");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(
            j < self.len(),
            "position {j} outside domain of size {}",
            self.len()
        );
        if let Some(t) = self.table.get() {
            return t[pair_offset(i, j)];
        }
        let family = match self.source {
            Source::Generated(family) => family,
            Source::Dense(_) => unreachable!("dense colorings carry their table"),
        };
        if let Some(&v) = self.memo.lock().unwrap().get(&(i, j)) {
            return v;
        }
        let v = self.compute(family, i, j);
        self.memo.lock().unwrap().insert((i, j), v);
        v
    }

    fn compute(&self, family: Family, i: usize, j: usize) -> ColorValue {
        let a = self.domain.get(i).expect("position in domain");
        let b = self.domain.get(j).expect("position in domain");
        match family {
            Family::Ek => ColorValue::Scalar(enum_index(&b, &a).expect("a < b")),
            Family::Varrho => {
                let (u, v) = varrho(&a, &b).expect("a < b");
                ColorValue::Pair(u, v)
            }
            Family::Delta { .. } => {
                let x = a.as_nat().expect("finite") ^ b.as_nat().expect("finite");
                ColorValue::Scalar(u64::from(63 - x.leading_zeros()))
            }
            Family::Random { .. } => unreachable!("random colorings are materialized"),
        }
    }

    /// Every value in column order, materializing generated families.
    pub fn table(&self) -> &[ColorValue] {
        self.table.get_or_init(|| {
            let n = self.len();
            let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for j in 1..n {
                for i in 0..j {
                    out.push(self.eval_index(i, j));
                }
            }
            out
        })
    }

    /// Colors taken by at least one pair, sorted by index.
    pub fn realized_colors(&self) -> Vec<ColorValue> {
        let set: BTreeSet<ColorValue> = self.table().iter().copied().collect();
        set.into_iter().collect()
    }

    /// Restriction to a sub-domain, as a dense coloring when the arity is
    /// finite and as the same family otherwise.
    pub fn restrict(&self, sub: &OrdinalDomain) -> Result<Coloring, ColoringError> {
        let positions = sub
            .elements()
            .iter()
            .map(|a| self.position(a))
            .collect::<Result<Vec<_>, _>>()?;
        match (&self.source, self.arity) {
            (Source::Generated(f @ (Family::Ek | Family::Varrho)), _) => {
                Ok(Coloring::generated(sub.clone(), self.arity, *f))
            }
            (_, Arity::Finite(k)) => {
                let mut values = Vec::new();
                for (jj, &j) in positions.iter().enumerate().skip(1) {
                    for &i in &positions[..jj] {
                        values.push(self.eval_index(i, j));
                    }
                }
                Coloring::dense(sub.clone(), k, values)
            }
            (_, Arity::Unbounded) => Err(ColoringError::InvalidParameter(
                "cannot restrict an unbounded dense coloring".into(),
            )),
        }
    }
}

pub fn ek_coloring(domain: OrdinalDomain) -> Coloring {
    Coloring::generated(domain, Arity::Unbounded, Family::Ek)
}

pub fn varrho_coloring(domain: OrdinalDomain) -> Coloring {
    Coloring::generated(domain, Arity::Unbounded, Family::Varrho)
}

pub fn delta_coloring(bits: u32) -> Result<Coloring, ColoringError> {
    if !(1..=24).contains(&bits) {
        return Err(ColoringError::InvalidParameter(format!(
            "delta coloring needs 1 ≤ bits ≤ 24, got {bits}"
        )));
    }
    let domain = OrdinalDomain::initial(1usize << bits)?;
    Ok(Coloring::generated(
        domain,
        Arity::Finite(u64::from(bits)),
        Family::Delta { bits },
    ))
}

/// Seeded random coloring of `{0, …, n−1}`: one `ChaCha8Rng::seed_from_u64(seed)`
/// draw of `gen_range(0..arity)` per pair, in column order.
pub fn random_coloring(n: usize, arity: u64, seed: u64) -> Result<Coloring, ColoringError> {
    if n < 2 || arity < 1 {
        return Err(ColoringError::InvalidParameter(format!(
            "random coloring needs n ≥ 2 and arity ≥ 1, got n={n} arity={arity}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<ColorValue> = (0..n * (n - 1) / 2)
        .map(|_| ColorValue::Scalar(rng.gen_range(0..arity)))
        .collect();
    let c = Coloring::generated(
        OrdinalDomain::initial(n)?,
        Arity::Finite(arity),
        Family::Random { seed, arity },
    );
    let _ = c.table.set(values);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pentagon() -> Coloring {
        Coloring::from_fn(5, 2, |i, j| u64::from(!(j - i == 1 || j - i == 4))).unwrap()
    }

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn pentagon_values() {
        let c = pentagon();
        assert_eq!(c.eval(&o("0"), &o("1")).unwrap(), ColorValue::Scalar(0));
        assert_eq!(c.eval(&o("4"), &o("0")).unwrap(), ColorValue::Scalar(0));
        assert_eq!(c.eval(&o("0"), &o("2")).unwrap(), ColorValue::Scalar(1));
        assert!(matches!(
            c.eval(&o("2"), &o("2")),
            Err(ColoringError::Diagonal(_))
        ));
        assert!(matches!(
            c.eval(&o("2"), &o("7")),
            Err(ColoringError::NotInDomain(_))
        ));
    }

    #[test]
    fn ek_values() {
        let c = ek_coloring(OrdinalDomain::initial(6).unwrap());
        assert_eq!(c.eval(&o("2"), &o("5")).unwrap(), ColorValue::Scalar(2));
        let d = OrdinalDomain::explicit(vec![o("3"), o("w")]).unwrap();
        assert_eq!(
            ek_coloring(d).eval(&o("3"), &o("w")).unwrap(),
            ColorValue::Scalar(3)
        );
    }

    #[test]
    fn varrho_values() {
        let d = |v: &[&str]| OrdinalDomain::explicit(v.iter().map(|s| o(s)).collect()).unwrap();
        assert_eq!(
            varrho_coloring(d(&["2", "3"]))
                .eval(&o("2"), &o("3"))
                .unwrap(),
            ColorValue::Pair(0, 3)
        );
        assert_eq!(
            varrho_coloring(d(&["3", "w"]))
                .eval(&o("3"), &o("w"))
                .unwrap(),
            ColorValue::Pair(3, 4)
        );
        assert_eq!(
            varrho_coloring(d(&["0", "1"]))
                .eval(&o("0"), &o("1"))
                .unwrap(),
            ColorValue::Pair(0, 1)
        );
    }

    #[test]
    fn delta_values() {
        let c = delta_coloring(2).unwrap();
        assert_eq!(c.eval(&o("2"), &o("3")).unwrap(), ColorValue::Scalar(0));
        assert_eq!(c.eval(&o("1"), &o("2")).unwrap(), ColorValue::Scalar(1));
        assert_eq!(c.eval(&o("0"), &o("1")).unwrap(), ColorValue::Scalar(0));
        assert!(delta_coloring(0).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let c = random_coloring(2, 1, 12345).unwrap();
        assert_eq!(c.table(), &[ColorValue::Scalar(0)]);
        let a = random_coloring(9, 3, 77).unwrap();
        let b = random_coloring(9, 3, 77).unwrap();
        assert_eq!(a.table(), b.table());
        assert!(random_coloring(1, 2, 0).is_err());
        assert!(random_coloring(4, 0, 0).is_err());
    }

    #[test]
    fn dense_validation() {
        let d = OrdinalDomain::initial(3).unwrap();
        let err = Coloring::dense(d.clone(), 2, vec![ColorValue::Scalar(0); 2]).unwrap_err();
        assert!(matches!(
            err,
            ColoringError::SizeMismatch {
                expected: 3,
                found: 2
            }
        ));
        let err = Coloring::dense(d, 2, vec![ColorValue::Scalar(2); 3]).unwrap_err();
        assert!(matches!(
            err,
            ColoringError::ColorOutOfRange { color: 2, arity: 2 }
        ));
    }

    #[test]
    fn pairing_round_trip() {
        for u in 0..=1000u64 {
            for v in (0..=1000u64).step_by(7) {
                assert_eq!(decode_pair(encode_pair(u, v)), (u, v));
            }
        }
        assert_eq!(encode_pair(0, 0), 0);
        assert_eq!(encode_pair(1, 0), 1);
        assert_eq!(encode_pair(0, 1), 2);
    }

    #[test]
    fn color_value_parsing() {
        assert_eq!("4".parse::<ColorValue>().unwrap(), ColorValue::Scalar(4));
        assert_eq!(
            "(3,4)".parse::<ColorValue>().unwrap(),
            ColorValue::Pair(3, 4)
        );
        assert_eq!("3,4".parse::<ColorValue>().unwrap(), ColorValue::Pair(3, 4));
        assert!("x".parse::<ColorValue>().is_err());
        assert!("(3)".parse::<ColorValue>().is_err());
    }

    #[test]
    fn restriction_keeps_values() {
        let c = pentagon();
        let sub = OrdinalDomain::explicit(vec![o("1"), o("3"), o("4")]).unwrap();
        let r = c.restrict(&sub).unwrap();
        assert_eq!(
            r.eval(&o("3"), &o("4")).unwrap(),
            c.eval(&o("3"), &o("4")).unwrap()
        );
        assert_eq!(
            r.eval(&o("1"), &o("4")).unwrap(),
            c.eval(&o("1"), &o("4")).unwrap()
        );
    }
}
