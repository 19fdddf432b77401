//! Canonical boundary divisor indices on M̄₀,ₙ.
//!
//! A boundary divisor B_I of M̄₀,ₙ is indexed by a subset I ⊆ {1, …, n} with
//! 2 ≤ |I| ≤ n − 2, and B_I = B_{I^c}.  Each pair {I, I^c} has a canonical
//! representative: the smaller side, with ties (|I| = n/2) broken toward the
//! side containing the marked point 1.  [`BoundaryIndex`] stores only
//! canonical representatives, so equality of indices is equality of divisors.
//!
//! Indices order by (size, then lexicographic on the sorted elements), which
//! is also the column order used by the relation matrices in
//! [`crate::relations`].

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest n for which subsets fit the internal bitmask representation.
pub const MAX_N: u8 = 30;

/// A canonical boundary index: the subset I in its preferred form, together
/// with the ambient n.
///
/// Invariants: 4 ≤ n ≤ [`MAX_N`], 2 ≤ |I| ≤ n/2, and when |I| = n/2 the set
/// contains the element 1.  All constructors canonicalize, so these hold for
/// every value of this type.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryIndex {
    n: u8,
    mask: u32,
}

impl BoundaryIndex {
    /// Builds the canonical index for the subset with the given elements.
    ///
    /// The subset may be given in either form (I or its complement); the
    /// canonical side is chosen here.  Duplicate elements are rejected.
    pub fn new(n: u8, elements: impl IntoIterator<Item = u8>) -> Result<Self> {
        check_n(n)?;
        let mut mask: u32 = 0;
        for e in elements {
            if e < 1 || e > n {
                return Err(Error::InvalidBoundary(format!(
                    "element {e} outside 1..={n}"
                )));
            }
            let bit = 1u32 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidBoundary(format!("duplicate element {e}")));
            }
            mask |= bit;
        }
        Self::from_mask(n, mask)
    }

    /// Builds the canonical index from a bitmask (bit i−1 set ⇔ i ∈ I).
    pub fn from_mask(n: u8, mask: u32) -> Result<Self> {
        check_n(n)?;
        let full = full_mask(n);
        if mask & !full != 0 {
            return Err(Error::InvalidBoundary(format!(
                "mask {mask:#b} has bits outside 1..={n}"
            )));
        }
        let size = mask.count_ones();
        if size < 2 || size > u32::from(n) - 2 {
            return Err(Error::InvalidBoundary(format!(
                "subset size {size} outside 2..={} for n = {n}",
                n - 2
            )));
        }
        let comp = full & !mask;
        let comp_size = comp.count_ones();
        let canonical = match size.cmp(&comp_size) {
            Ordering::Less => mask,
            Ordering::Greater => comp,
            // Equal halves: keep the side containing the marked point 1.
            Ordering::Equal => {
                if mask & 1 != 0 {
                    mask
                } else {
                    comp
                }
            }
        };
        Ok(Self { n, mask: canonical })
    }

    /// The ambient number of marked points.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Size of the canonical representative subset.
    #[inline]
    pub fn size(&self) -> u8 {
        self.mask.count_ones() as u8
    }

    /// Bitmask of the canonical representative (bit i−1 set ⇔ i ∈ I).
    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Bitmask of the complementary subset.
    #[inline]
    pub fn complement_mask(&self) -> u32 {
        full_mask(self.n) & !self.mask
    }

    /// Elements of the canonical representative, ascending.
    pub fn elements(&self) -> Vec<u8> {
        (1..=self.n).filter(|&e| self.contains(e)).collect()
    }

    /// Whether the canonical representative contains the element.
    #[inline]
    pub fn contains(&self, element: u8) -> bool {
        element >= 1 && element <= self.n && self.mask & (1u32 << (element - 1)) != 0
    }

    /// The index for the subset σ(I) = {σ(i) : i ∈ I}.
    ///
    /// `perm` lists the images of 1, …, n in order, i.e. `perm[i-1] = σ(i)`,
    /// and must be a permutation of 1..=n.
    pub fn apply_permutation(&self, perm: &[u8]) -> Result<Self> {
        let mapped = permute_mask(self.n, self.mask, perm)?;
        Self::from_mask(self.n, mapped)
    }
}

impl Ord for BoundaryIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        // (n, size, lexicographic on ascending elements).  For equal sizes the
        // lex order on element sequences is decided by the smallest element
        // not shared by both sets: the set containing it comes first.
        self.n
            .cmp(&other.n)
            .then(self.size().cmp(&other.size()))
            .then_with(|| {
                let diff = self.mask ^ other.mask;
                if diff == 0 {
                    return Ordering::Equal;
                }
                let low = diff & diff.wrapping_neg();
                if self.mask & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for BoundaryIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{{")?;
        for (k, e) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

// Debug defers to Display: the canonical text form is the most readable
// rendering in test failures.
impl fmt::Debug for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonicalizes a subset into its boundary index.  Convenience alias for
/// [`BoundaryIndex::new`].
pub fn canonical_boundary(n: u8, elements: impl IntoIterator<Item = u8>) -> Result<BoundaryIndex> {
    BoundaryIndex::new(n, elements)
}

/// All distinct boundary classes of M̄₀,ₙ in canonical order (size ascending,
/// then lexicographic).  Their number is 2^{n−1} − n − 1.
pub fn all_boundary_classes(n: u8) -> Result<Vec<BoundaryIndex>> {
    check_n(n)?;
    let full = full_mask(n);
    let mut out = Vec::new();
    for mask in 0..=full {
        let size = mask.count_ones();
        if size < 2 || size > u32::from(n) - 2 {
            continue;
        }
        let idx = BoundaryIndex::from_mask(n, mask)?;
        if idx.mask() == mask {
            out.push(idx);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Applies a permutation (images of 1..=n in order) to a bitmask over 1..=n.
pub(crate) fn permute_mask(n: u8, mask: u32, perm: &[u8]) -> Result<u32> {
    if perm.len() != usize::from(n) {
        return Err(Error::InvalidArgument(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen: u32 = 0;
    let mut mapped: u32 = 0;
    for (i, &image) in perm.iter().enumerate() {
        if image < 1 || image > n {
            return Err(Error::InvalidArgument(format!(
                "permutation image {image} outside 1..={n}"
            )));
        }
        let bit = 1u32 << (image - 1);
        if seen & bit != 0 {
            return Err(Error::InvalidArgument(format!(
                "permutation repeats image {image}"
            )));
        }
        seen |= bit;
        if mask & (1u32 << i) != 0 {
            mapped |= bit;
        }
    }
    Ok(mapped)
}

pub(crate) fn full_mask(n: u8) -> u32 {
    (1u32 << n) - 1
}

pub(crate) fn check_n(n: u8) -> Result<()> {
    if !(4..=MAX_N).contains(&n) {
        return Err(Error::InvalidBoundary(format!(
            "n = {n} outside the supported range 4..={MAX_N}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: u8, elems: &[u8]) -> BoundaryIndex {
        BoundaryIndex::new(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn picks_the_smaller_side() {
        // {3,4,5,6,7} has the smaller complement {1,2}.
        assert_eq!(bi(7, &[3, 4, 5, 6, 7]), bi(7, &[1, 2]));
        assert_eq!(bi(7, &[3, 4, 5, 6, 7]).elements(), vec![1, 2]);
    }

    #[test]
    fn equal_halves_keep_the_side_with_one() {
        // For n = 8, {2,3,4,5} and {1,6,7,8} are both 4-element sides; the
        // canonical representative contains 1.
        assert_eq!(bi(8, &[2, 3, 4, 5]).elements(), vec![1, 6, 7, 8]);
        assert_eq!(bi(8, &[1, 6, 7, 8]).elements(), vec![1, 6, 7, 8]);
    }

    #[test]
    fn canonical_input_is_untouched() {
        assert_eq!(bi(7, &[1, 2]).elements(), vec![1, 2]);
        assert_eq!(bi(7, &[2, 5, 6]).elements(), vec![2, 5, 6]);
    }

    #[test]
    fn complement_collapses_to_the_same_index() {
        let n = 7;
        for idx in all_boundary_classes(n).unwrap() {
            let comp = BoundaryIndex::from_mask(n, idx.complement_mask()).unwrap();
            assert_eq!(idx, comp);
        }
    }

    #[test]
    fn rejects_degenerate_subsets() {
        assert!(BoundaryIndex::new(7, [1]).is_err());
        assert!(BoundaryIndex::new(7, [1, 2, 3, 4, 5, 6]).is_err());
        assert!(BoundaryIndex::new(7, [0, 1]).is_err());
        assert!(BoundaryIndex::new(7, [1, 8]).is_err());
        assert!(BoundaryIndex::new(7, [3, 3]).is_err());
        assert!(BoundaryIndex::new(3, [1, 2]).is_err());
    }

    #[test]
    fn class_counts_match_the_closed_form() {
        for n in 4..=8u8 {
            let expected = (1usize << (n - 1)) - usize::from(n) - 1;
            assert_eq!(all_boundary_classes(n).unwrap().len(), expected, "n = {n}");
        }
        // Spot values: 3, 10, 25, 56, 119.
        assert_eq!(all_boundary_classes(4).unwrap().len(), 3);
        assert_eq!(all_boundary_classes(7).unwrap().len(), 56);
        assert_eq!(all_boundary_classes(8).unwrap().len(), 119);
    }

    #[test]
    fn order_is_size_then_lex() {
        let classes = all_boundary_classes(6).unwrap();
        let rendered: Vec<String> = classes.iter().take(4).map(|c| c.to_string()).collect();
        assert_eq!(rendered, ["B{1,2}", "B{1,3}", "B{1,4}", "B{1,5}"]);
        // All 2-subsets precede all 3-subsets.
        let first_triple = classes.iter().position(|c| c.size() == 3).unwrap();
        assert_eq!(first_triple, 15);
        assert!(classes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn display_form() {
        assert_eq!(bi(7, &[4, 1]).to_string(), "B{1,4}");
        assert_eq!(bi(8, &[2, 3, 4, 5]).to_string(), "B{1,6,7,8}");
    }

    #[test]
    fn permutation_action_is_compatible_with_canonicalization() {
        // σ = (1 2 3 4 5 6 7) as images of 1..7.
        let perm = [2, 3, 4, 5, 6, 7, 1];
        let moved = bi(7, &[1, 2]).apply_permutation(&perm).unwrap();
        assert_eq!(moved, bi(7, &[2, 3]));
        // A 5-element set permutes through its complement consistently.
        let moved = bi(7, &[3, 4, 5, 6, 7]).apply_permutation(&perm).unwrap();
        assert_eq!(moved, bi(7, &[2, 3]));
    }

    #[test]
    fn rejects_non_permutations() {
        let idx = bi(7, &[1, 2]);
        assert!(idx.apply_permutation(&[1, 1, 3, 4, 5, 6, 7]).is_err());
        assert!(idx.apply_permutation(&[1, 2, 3]).is_err());
        assert!(idx.apply_permutation(&[0, 2, 3, 4, 5, 6, 7]).is_err());
    }
}
