//! Subsets of a small ground set encoded as bitmasks.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use crate::error::{Error, Result};

/// Largest ground set any system may have (explicit tables hold `2^n` values).
pub const MAX_GROUND: usize = 24;

/// A subset `A ⊆ X` of the ground set `X = {0, .., n-1}`.
///
/// Bit `i` is set iff element `i` belongs to the subset. Masks carry no
/// ground-set size; range checks happen against a system's `n`.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The whole ground set of size `n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(e: usize) -> Self {
        SubsetMask(1 << e)
    }

    /// Builds a mask from element indices, rejecting indices `>= n`.
    pub fn from_elements<I>(n: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u32;
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << e;
        }
        Ok(SubsetMask(bits))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < 32 && self.0 & (1 << e) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// `X ∖ A` for a ground set of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> SubsetMask {
        SubsetMask(Self::full(n).0 ^ self.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// True iff no bit at position `>= n` is set.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !Self::full(n).0 == 0
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if self.fits(n) {
            Ok(self)
        } else {
            Err(Error::MaskOutOfRange { mask: self.0, n })
        }
    }

    /// Element indices in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// All subsets of the ground set of size `n`, ascending by mask value.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        (0..=Self::full(n).0 as u64).map(|b| SubsetMask(b as u32))
    }

    /// Supersets of `self` inside the ground set of size `n`, ascending.
    pub fn supersets(self, n: usize) -> impl Iterator<Item = SubsetMask> {
        let full = Self::full(n).0;
        let base = self.0;
        let free = full & !base;
        // ascending enumeration of submasks of `free`
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == free {
                None
            } else {
                Some(((cur | !free).wrapping_add(1)) & free)
            };
            Some(SubsetMask(base | cur))
        })
    }

    /// Subsets of `self`, ascending.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let set = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == set {
                None
            } else {
                Some(((cur | !set).wrapping_add(1)) & set)
            };
            Some(SubsetMask(cur))
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_full() {
        assert_eq!(SubsetMask::full(3), SubsetMask(0b111));
        assert_eq!(SubsetMask(0b001).complement(3), SubsetMask(0b110));
        assert_eq!(SubsetMask::full(24).0, (1 << 24) - 1);
    }

    #[test]
    fn from_elements_rejects_out_of_range() {
        assert_eq!(SubsetMask::from_elements(3, [0, 2]).unwrap(), SubsetMask(0b101));
        assert!(matches!(
            SubsetMask::from_elements(3, [3]),
            Err(Error::ElementOutOfRange { element: 3, n: 3 })
        ));
    }

    #[test]
    fn superset_and_subset_enumeration_match_brute_force() {
        let n = 5;
        for a in SubsetMask::all(n) {
            let sup: Vec<_> = a.supersets(n).collect();
            let brute: Vec<_> = SubsetMask::all(n).filter(|b| a.is_subset_of(*b)).collect();
            assert_eq!(sup, brute);
            let sub: Vec<_> = a.subsets().collect();
            let brute: Vec<_> = SubsetMask::all(n).filter(|b| b.is_subset_of(a)).collect();
            assert_eq!(sub, brute);
        }
    }

    #[test]
    fn display_lists_elements() {
        assert_eq!(SubsetMask(0b1010).to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }
}
