//! Filters on a finite index set `I = {0, …, n-1}`.
//!
//! On a finite set every filter is principal: it is exactly the family of
//! supersets of the intersection of its generators (the kernel). Membership
//! is therefore a subset test against the kernel and no member list is ever
//! materialized.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A subset of the index set.
pub type IndexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Filter {
    index_size: usize,
    generators: Vec<IndexSet>,
    kernel: IndexSet,
}

impl Filter {
    /// The filter generated by `generators`. An empty kernel is rejected.
    pub fn new(index_size: usize, generators: Vec<IndexSet>) -> Result<Self> {
        let f = Self::new_unchecked_proper(index_size, generators)?;
        if f.kernel.is_empty() {
            return Err(Error::ImproperFilter);
        }
        Ok(f)
    }

    /// Like [`Filter::new`] but allows the improper filter `P(I)`.
    pub fn new_allow_improper(index_size: usize, generators: Vec<IndexSet>) -> Result<Self> {
        Self::new_unchecked_proper(index_size, generators)
    }

    fn new_unchecked_proper(index_size: usize, generators: Vec<IndexSet>) -> Result<Self> {
        if index_size == 0 {
            return Err(Error::EmptyIndexSet);
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if let Some(&i) = g.iter().find(|&&i| i >= index_size) {
                return Err(Error::IndexOutOfRange { index: i, size: index_size });
            }
        }
        let mut kernel = generators[0].clone();
        for g in &generators[1..] {
            kernel.retain(|i| g.contains(i));
        }
        Ok(Filter { index_size, generators, kernel })
    }

    /// `Φ = {I}`.
    pub fn trivial(index_size: usize) -> Result<Self> {
        Self::new(index_size, vec![(0..index_size).collect()])
    }

    /// All supersets of `kernel`.
    pub fn principal(index_size: usize, kernel: IndexSet) -> Result<Self> {
        Self::new(index_size, vec![kernel])
    }

    pub fn index_size(&self) -> usize {
        self.index_size
    }

    pub fn generators(&self) -> &[IndexSet] {
        &self.generators
    }

    /// Intersection of the generators; the least member.
    pub fn kernel(&self) -> &IndexSet {
        &self.kernel
    }

    pub fn is_proper(&self) -> bool {
        !self.kernel.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel.len() == self.index_size
    }

    pub fn member(&self, set: &IndexSet) -> bool {
        self.kernel.is_subset(set)
    }

    /// Membership for a set given as a predicate on indices.
    pub fn member_by(&self, mut contains: impl FnMut(usize) -> bool) -> bool {
        self.kernel.iter().all(|&i| contains(i))
    }

    /// Exactly one of `A`, `I∖A` is a member for every `A`.
    pub fn is_ultrafilter(&self) -> bool {
        self.kernel.len() == 1
    }

    /// `Φ↾J = Φ ∩ P(J)`, re-indexed onto `0..|J|` in increasing order of `J`.
    pub fn restrict(&self, domain: &IndexSet) -> Result<Restriction> {
        if let Some(&i) = domain.iter().find(|&&i| i >= self.index_size) {
            return Err(Error::IndexOutOfRange { index: i, size: self.index_size });
        }
        if !self.member(domain) {
            return Err(Error::NotInFilter { set: domain.iter().copied().collect() });
        }
        let domain: Vec<usize> = domain.iter().copied().collect();
        let local = |g: &IndexSet| -> IndexSet {
            domain.iter().enumerate().filter(|(_, i)| g.contains(i)).map(|(k, _)| k).collect()
        };
        let generators = self.generators.iter().map(local).collect();
        let filter = Self::new_unchecked_proper(domain.len(), generators)?;
        Ok(Restriction { domain, filter })
    }
}

/// A filter on a subset `J ⊆ I`, stored on local positions `0..|J|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Restriction {
    /// `J` in increasing order; position `k` stands for index `domain[k]`.
    pub domain: Vec<usize>,
    pub filter: Filter,
}

impl Restriction {
    /// The kernel expressed in the original indices.
    pub fn kernel_in_parent(&self) -> IndexSet {
        self.filter.kernel().iter().map(|&k| self.domain[k]).collect()
    }

    /// Membership of a subset of `J` given in original indices.
    pub fn member(&self, set: &IndexSet) -> bool {
        set.iter().all(|i| self.domain.binary_search(i).is_ok()) && self.kernel_in_parent().is_subset(set)
    }
}
