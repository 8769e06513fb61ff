//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is the sum `ω^e₁·c₁ + … + ω^eₖ·cₖ` with strictly decreasing
//! exponents and positive coefficients. The empty sum is 0. Every value is
//! kept normalized, so structural equality is ordinal equality and the derived
//! lexicographic order on the term list is the ordinal order.

mod domain;
mod enumerate;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub use domain::{DomainError, OrdinalDomain};
pub use enumerate::{enum_index, enumerate_below, sample_below, size};
pub use parse::{parse_ordinal, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("{0} has no predecessor")]
    NoPredecessor(Ordinal),
    #[error("{index} is out of range for the {bound} ordinals below {bound}")]
    IndexOutOfRange { bound: Ordinal, index: u64 },
    #[error("{value} is not below {bound}")]
    NotBelow { value: Ordinal, bound: Ordinal },
    #[error("coefficient overflow")]
    Overflow,
}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// An ordinal below ε₀.
///
/// Comparison is lexicographic on terms (exponent first, then coefficient),
/// with a proper prefix being smaller. Because the form is normalized that is
/// exactly the ordinal order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exponent: Self::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::from_nat(1))
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: 1,
            }],
        }
    }

    /// Builds `Σ ω^e·c` from arbitrary terms using ordinal addition, so
    /// absorbed summands vanish and equal exponents merge.
    pub fn from_terms<I>(terms: I) -> Result<Self, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        let mut out = Self::zero();
        for (exponent, coefficient) in terms {
            out.add_term(exponent, coefficient)?;
        }
        Ok(out)
    }

    /// `self + ω^exponent·coefficient` in place.
    pub(crate) fn add_term(
        &mut self,
        exponent: Ordinal,
        coefficient: u64,
    ) -> Result<(), OrdinalError> {
        if coefficient == 0 {
            return Ok(());
        }
        while self.terms.last().is_some_and(|t| t.exponent < exponent) {
            self.terms.pop();
        }
        match self.terms.last_mut() {
            Some(last) if last.exponent == exponent => {
                last.coefficient = last
                    .coefficient
                    .checked_add(coefficient)
                    .ok_or(OrdinalError::Overflow)?;
            }
            _ => self.terms.push(Term {
                exponent,
                coefficient,
            }),
        }
        Ok(())
    }

    /// Ordinal sum `self + other`.
    pub(crate) fn plus(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let mut out = self.clone();
        for t in &other.terms {
            out.add_term(t.exponent.clone(), t.coefficient)?;
        }
        Ok(out)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exponent.is_zero())
    }

    pub fn successor(&self) -> Ordinal {
        let mut out = self.clone();
        match out.terms.last_mut() {
            Some(t) if t.exponent.is_zero() => t.coefficient += 1,
            _ => out.terms.push(Term {
                exponent: Self::zero(),
                coefficient: 1,
            }),
        }
        out
    }

    pub fn predecessor(&self) -> Result<Ordinal, OrdinalError> {
        if !self.is_successor() {
            return Err(OrdinalError::NoPredecessor(self.clone()));
        }
        let mut out = self.clone();
        let last = out.terms.last_mut().expect("successor has a last term");
        if last.coefficient == 1 {
            out.terms.pop();
        } else {
            last.coefficient -= 1;
        }
        Ok(out)
    }

    /// Splits `self = λ + k` into its limit part (a limit ordinal or 0) and
    /// finite tail.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => {
                let mut limit = self.clone();
                limit.terms.pop();
                (limit, t.coefficient)
            }
            _ => (self.clone(), 0),
        }
    }

    /// Maximal nesting depth of exponents: 0 for natural numbers, otherwise
    /// one more than the deepest exponent.
    pub fn depth(&self) -> u64 {
        if self.is_finite() {
            0
        } else {
            1 + self
                .terms
                .iter()
                .map(|t| t.exponent.depth())
                .max()
                .unwrap_or(0)
        }
    }

    /// Sum of all coefficients at every nesting level.
    pub fn coefficient_sum(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.coefficient.saturating_add(t.exponent.coefficient_sum()))
            .fold(0u64, u64::saturating_add)
    }

    /// The `k`-th element (0-indexed) of the canonical fundamental sequence
    /// of a limit ordinal.
    ///
    /// Writing `self = γ + ω^e·c`:
    /// `(γ + ω^(e'+1)·c)[k] = γ + ω^(e'+1)·(c−1) + ω^e'·(k+1)` and, for limit
    /// `e`, `(γ + ω^e·c)[k] = γ + ω^e·(c−1) + ω^(e[k])`. The one exception is
    /// `ω` itself, whose sequence is `0, 1, 2, …`.
    pub fn fund_seq(&self, k: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        if *self == Self::omega() {
            return Ok(Self::from_nat(k));
        }
        let (last, prefix) = self.terms.split_last().expect("limit has a last term");
        let mut out = Ordinal {
            terms: prefix.to_vec(),
        };
        if last.coefficient > 1 {
            out.terms.push(Term {
                exponent: last.exponent.clone(),
                coefficient: last.coefficient - 1,
            });
        }
        if last.exponent.is_successor() {
            let lower = last.exponent.predecessor()?;
            let count = k.checked_add(1).ok_or(OrdinalError::Overflow)?;
            out.add_term(lower, count)?;
        } else {
            out.add_term(last.exponent.fund_seq(k)?, 1)?;
        }
        Ok(out)
    }
}

/// Ordinal comparison. Total order; see [`Ordinal`].
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// Canonical fundamental sequence element; see [`Ordinal::fund_seq`].
pub fn fund_seq(b: &Ordinal, k: u64) -> Result<Ordinal, OrdinalError> {
    b.fund_seq(k)
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent.as_nat() != Some(1) {
                f.write_str("^")?;
                if t.exponent.needs_parens_as_exponent() {
                    write!(f, "({})", t.exponent)?;
                } else {
                    write!(f, "{}", t.exponent)?;
                }
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl Ordinal {
    // An exponent prints bare only when it is a natural number or a single
    // power of ω with coefficient 1.
    fn needs_parens_as_exponent(&self) -> bool {
        match self.terms.as_slice() {
            [] => false,
            [t] => !t.exponent.is_zero() && t.coefficient != 1,
            _ => true,
        }
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_ordinal(&s).map_err(serde::de::Error::custom)
    }
}
