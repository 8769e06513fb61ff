use thiserror::Error;

use super::Ordinal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("domain is empty")]
    Empty,
    #[error("domain elements must be strictly increasing (at position {0})")]
    NotIncreasing(usize),
}

/// A finite set of ordinals used as the vertex supply of a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrdinalDomain {
    /// `{0, …, n−1}`.
    InitialSegment(usize),
    /// Strictly increasing list of distinct ordinals.
    ExplicitSet(Vec<Ordinal>),
}

impl OrdinalDomain {
    pub fn initial(n: usize) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::Empty);
        }
        Ok(OrdinalDomain::InitialSegment(n))
    }

    pub fn explicit(elements: Vec<Ordinal>) -> Result<Self, DomainError> {
        if elements.is_empty() {
            return Err(DomainError::Empty);
        }
        if let Some(i) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(DomainError::NotIncreasing(i + 1));
        }
        Ok(OrdinalDomain::ExplicitSet(elements))
    }

    pub fn len(&self) -> usize {
        match self {
            OrdinalDomain::InitialSegment(n) => *n,
            OrdinalDomain::ExplicitSet(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_initial(&self) -> bool {
        matches!(self, OrdinalDomain::InitialSegment(_))
    }

    /// The element at position `i` in increasing order.
    pub fn get(&self, i: usize) -> Option<Ordinal> {
        match self {
            OrdinalDomain::InitialSegment(n) => (i < *n).then(|| Ordinal::from_nat(i as u64)),
            OrdinalDomain::ExplicitSet(v) => v.get(i).cloned(),
        }
    }

    pub fn index_of(&self, a: &Ordinal) -> Option<usize> {
        match self {
            OrdinalDomain::InitialSegment(n) => a
                .as_nat()
                .and_then(|k| usize::try_from(k).ok())
                .filter(|k| k < n),
            OrdinalDomain::ExplicitSet(v) => v.binary_search(a).ok(),
        }
    }

    pub fn contains(&self, a: &Ordinal) -> bool {
        self.index_of(a).is_some()
    }

    pub fn elements(&self) -> Vec<Ordinal> {
        (0..self.len()).filter_map(|i| self.get(i)).collect()
    }

    pub fn is_subset_of(&self, other: &OrdinalDomain) -> bool {
        match (self, other) {
            (OrdinalDomain::InitialSegment(a), OrdinalDomain::InitialSegment(b)) => a <= b,
            _ => self.elements().iter().all(|a| other.contains(a)),
        }
    }

    /// The sub-domain at the given (increasing) positions.
    pub fn restrict(&self, positions: &[usize]) -> Result<OrdinalDomain, DomainError> {
        let elements = positions
            .iter()
            .map(|&i| self.get(i).ok_or(DomainError::Empty))
            .collect::<Result<Vec<_>, _>>()?;
        OrdinalDomain::explicit(elements)
    }
}
