//! Oriented separations `(A, X ∖ A)`, the partial order `≤` between them,
//! and families of separations.

use std::fmt;

use crate::connectivity::{ConnectivitySystem, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// An oriented separation `(A, B)` with `B = X ∖ A` and cached order `f(A)`.
///
/// Ordered by the first side's mask, which is the canonical order used for
/// every set-valued output.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separation {
    first: SubsetMask,
    second: SubsetMask,
    order: u32,
}

impl Separation {
    pub fn first(&self) -> SubsetMask {
        self.first
    }

    pub fn second(&self) -> SubsetMask {
        self.second
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn ground(&self) -> SubsetMask {
        self.first | self.second
    }

    /// `(B, A)`.
    pub fn reverse(&self) -> Separation {
        Separation { first: self.second, second: self.first, order: self.order }
    }

    /// `(A, B) ≤ (C, D)` iff `A ⊆ C` and `B ⊇ D`.
    pub fn leq(&self, other: &Separation) -> Result<bool> {
        if self.ground() != other.ground() {
            return Err(Error::MismatchedSystems);
        }
        Ok(self.first.is_subset_of(other.first) && other.second.is_subset_of(self.second))
    }

    /// `leq` and not equal.
    pub fn lt(&self, other: &Separation) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }
}

impl fmt::Debug for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})[{}]", self.first, self.second, self.order)
    }
}

/// `(A, X ∖ A)` with its order.
pub fn make_separation(system: &ConnectivitySystem, a: SubsetMask) -> Result<Separation> {
    let order = system.evaluate(a)?;
    Ok(Separation { first: a, second: a.complement(system.n()), order })
}

/// All oriented separations of order `<= k`, ascending by first side.
pub fn enumerate_k_efficient(system: &ConnectivitySystem, k: u32) -> Result<Vec<Separation>> {
    let n = system.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded { n, limit: ENUMERATION_LIMIT, what: "separation enumeration" });
    }
    let full = system.full();
    Ok(SubsetMask::all(n)
        .filter_map(|a| {
            let order = system.order(a);
            (order <= k).then_some(Separation { first: a, second: full ^ a, order })
        })
        .collect())
}

/// A finite set of separations of one system, declared against order bound `k`.
///
/// Members are kept sorted by first side with no duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeparationFamily {
    n: usize,
    k: u32,
    members: Vec<Separation>,
}

impl SeparationFamily {
    pub fn empty(n: usize, k: u32) -> Self {
        SeparationFamily { n, k, members: Vec::new() }
    }

    /// Builds a family from first sides; repeated sides are an error.
    pub fn from_sides<I>(system: &ConnectivitySystem, k: u32, sides: I) -> Result<Self>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        let mut members = sides
            .into_iter()
            .map(|a| make_separation(system, a))
            .collect::<Result<Vec<_>>>()?;
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSide(w[0].first.to_vec()));
        }
        Ok(SeparationFamily { n: system.n(), k, members })
    }

    /// Same as [`from_sides`](Self::from_sides) but silently merges repeats.
    pub fn from_side_set<I>(system: &ConnectivitySystem, k: u32, sides: I) -> Result<Self>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        let mut sides: Vec<SubsetMask> = sides.into_iter().collect();
        sides.sort();
        sides.dedup();
        Self::from_sides(system, k, sides)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn members(&self) -> &[Separation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sides(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().map(|s| s.first)
    }

    pub fn contains_side(&self, a: SubsetMask) -> bool {
        self.members.binary_search_by(|s| s.first.cmp(&a)).is_ok()
    }

    /// `{(B, A) : (A, B) ∈ self}` with the same `k`.
    pub fn dual(&self) -> SeparationFamily {
        let mut members: Vec<Separation> = self.members.iter().map(Separation::reverse).collect();
        members.sort();
        SeparationFamily { n: self.n, k: self.k, members }
    }

    /// Canonical comparison key: ascending first-side masks.
    pub fn key(&self) -> Vec<u32> {
        self.sides().map(SubsetMask::bits).collect()
    }
}

impl fmt::Debug for SeparationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} ", self.k)?;
        f.debug_set().entries(self.members.iter().map(|s| s.first)).finish()
    }
}
