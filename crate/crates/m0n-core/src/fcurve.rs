//! F-curves and the intersection pairing against divisor classes.
//!
//! An F-curve on M̄₀,ₙ is indexed by a partition of {1, …, n} into four
//! nonempty blocks; it is the one-dimensional boundary stratum whose generic
//! member is a central ℙ¹ with four tails.  The pairing with a boundary class
//! B_J counts one intersection per canonical class:
//!
//! - +1 when J (or its complement) is the union of exactly two blocks,
//! - −1 when J (or its complement) is a single block,
//! - 0 otherwise,
//!
//! and F · ψ_i = 1 exactly when {i} is one of the four blocks.  These rules
//! pair every canonical class once — "J or its complement" never counts the
//! same geometric divisor from both sides.

use std::fmt;

use num_traits::Zero;

use crate::boundary::{check_n, full_mask};
use crate::divisor::DivisorClass;
use crate::rational::{q, Q};
use crate::{Error, Result};

/// An F-curve: four disjoint nonempty blocks covering {1, …, n}, stored as
/// bitmasks ordered by smallest element.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FCurve {
    n: u8,
    blocks: [u32; 4],
}

impl FCurve {
    /// Builds an F-curve from four blocks of marked points.
    ///
    /// The blocks must be nonempty, pairwise disjoint, and cover 1..=n.
    pub fn new(n: u8, blocks: [&[u8]; 4]) -> Result<Self> {
        check_n(n)?;
        let mut masks = [0u32; 4];
        let mut union: u32 = 0;
        for (slot, block) in masks.iter_mut().zip(blocks) {
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty F-curve block".into()));
            }
            for &e in block {
                if e < 1 || e > n {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                let bit = 1u32 << (e - 1);
                if union & bit != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "element {e} appears in two blocks"
                    )));
                }
                union |= bit;
                *slot |= bit;
            }
        }
        if union != full_mask(n) {
            return Err(Error::InvalidArgument(format!(
                "blocks do not cover 1..={n}"
            )));
        }
        Ok(Self::from_masks_unchecked(n, masks))
    }

    /// The representative F-curve of a numerical type: blocks are consecutive
    /// runs 1..a₁, a₁+1..a₁+a₂, … with the sizes taken in ascending order.
    pub fn from_type(n: u8, sizes: [u8; 4]) -> Result<Self> {
        check_n(n)?;
        let total: u32 = sizes.iter().map(|&s| u32::from(s)).sum();
        if sizes.contains(&0) || total != u32::from(n) {
            return Err(Error::InvalidArgument(format!(
                "block sizes {sizes:?} are not a partition of {n} into four positive parts"
            )));
        }
        let mut sizes = sizes;
        sizes.sort_unstable();
        let mut masks = [0u32; 4];
        let mut next = 0u8;
        for (slot, &size) in masks.iter_mut().zip(&sizes) {
            for _ in 0..size {
                *slot |= 1u32 << next;
                next += 1;
            }
        }
        Ok(Self::from_masks_unchecked(n, masks))
    }

    fn from_masks_unchecked(n: u8, mut blocks: [u32; 4]) -> Self {
        blocks.sort_unstable_by_key(|m| m.trailing_zeros());
        Self { n, blocks }
    }

    /// The ambient number of marked points.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Block bitmasks, ordered by smallest element.
    #[inline]
    pub fn block_masks(&self) -> [u32; 4] {
        self.blocks
    }

    /// Block element lists, ordered by smallest element.
    pub fn blocks(&self) -> [Vec<u8>; 4] {
        self.blocks.map(|mask| {
            (1..=self.n)
                .filter(|&e| mask & (1u32 << (e - 1)) != 0)
                .collect()
        })
    }

    /// Block sizes in ascending order: the numerical type of the curve.
    pub fn sizes(&self) -> [u8; 4] {
        let mut sizes = self.blocks.map(|m| m.count_ones() as u8);
        sizes.sort_unstable();
        sizes
    }

    /// The F-curve with every block moved by the permutation (images of
    /// 1..=n in order).
    pub fn apply_permutation(&self, perm: &[u8]) -> Result<Self> {
        let mut masks = [0u32; 4];
        for (slot, mask) in masks.iter_mut().zip(self.blocks) {
            *slot = crate::boundary::permute_mask(self.n, mask, perm)?;
        }
        Ok(Self::from_masks_unchecked(self.n, masks))
    }
}

impl fmt::Display for FCurve {
    /// Renders in the curve syntax: `F{1}{2}{3}{4,5,6,7}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F")?;
        for block in self.blocks() {
            write!(f, "{{")?;
            for (k, e) in block.into_iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The intersection number F · D.
pub fn pair_fcurve(curve: &FCurve, divisor: &DivisorClass) -> Result<Q> {
    if curve.n() != divisor.n() {
        return Err(Error::MismatchedN(curve.n(), divisor.n()));
    }
    let blocks = curve.block_masks();
    let mut total = Q::zero();
    for (idx, coeff) in divisor.boundary_coeffs() {
        let j = idx.mask();
        let jc = idx.complement_mask();
        let single = blocks.iter().any(|&b| b == j || b == jc);
        let contribution = if single {
            -1
        } else {
            let mut two = false;
            for p in 0..4 {
                for r in p + 1..4 {
                    let u = blocks[p] | blocks[r];
                    if u == j || u == jc {
                        two = true;
                    }
                }
            }
            i64::from(two)
        };
        if contribution != 0 {
            total += coeff * q(contribution);
        }
    }
    for (&i, coeff) in divisor.psi_coeffs() {
        let bit = 1u32 << (i - 1);
        if blocks.iter().any(|&b| b == bit) {
            total += coeff;
        }
    }
    Ok(total)
}

/// All F-curves on M̄₀,ₙ: every partition of {1, …, n} into four nonempty
/// blocks, enumerated once.  Their number is the Stirling number S(n, 4).
pub fn all_fcurves(n: u8) -> Result<Vec<FCurve>> {
    check_n(n)?;
    // Restricted-growth strings with exactly four blocks: element 1 is always
    // in block 0, and each later element may open at most one new block.
    let mut out = Vec::new();
    let mut assignment = vec![0u8; usize::from(n)];
    fn recurse(n: u8, pos: usize, used: u8, assignment: &mut [u8], out: &mut Vec<FCurve>) {
        if pos == usize::from(n) {
            if used == 4 {
                let mut masks = [0u32; 4];
                for (i, &block) in assignment.iter().enumerate() {
                    masks[usize::from(block)] |= 1u32 << i;
                }
                out.push(FCurve::from_masks_unchecked(n, masks));
            }
            return;
        }
        let remaining = usize::from(n) - pos;
        for block in 0..=used.min(3) {
            let new_used = if block == used { used + 1 } else { used };
            // Prune branches that can no longer open four blocks.
            if usize::from(4 - new_used) > remaining - 1 {
                continue;
            }
            assignment[pos] = block;
            recurse(n, pos + 1, new_used, assignment, out);
        }
    }
    recurse(n, 0, 0, &mut assignment, &mut out);
    Ok(out)
}

/// The numerical F-curve types on M̄₀,ₙ: partitions of n into four positive
/// parts, each listed in ascending order.
pub fn fcurve_types(n: u8) -> Result<Vec<[u8; 4]>> {
    check_n(n)?;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for c in b..=n {
                let rest = i16::from(n) - i16::from(a) - i16::from(b) - i16::from(c);
                if rest >= i16::from(c) {
                    out.push([a, b, c, rest as u8]);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::canonical_boundary;
    use crate::rational::q;

    fn b(n: u8, elems: &[u8]) -> crate::BoundaryIndex {
        canonical_boundary(n, elems.iter().copied()).unwrap()
    }

    fn pair_b(curve: &FCurve, n: u8, elems: &[u8]) -> Q {
        pair_fcurve(curve, &DivisorClass::boundary(b(n, elems))).unwrap()
    }

    #[test]
    fn pairing_against_single_boundary_classes() {
        let f = FCurve::new(7, [&[1], &[2], &[3], &[4, 5, 6, 7]]).unwrap();
        // Union of two singleton blocks.
        assert_eq!(pair_b(&f, 7, &[1, 2]), q(1));
        assert_eq!(pair_b(&f, 7, &[1, 3]), q(1));
        // A block itself (via either side of the index).
        assert_eq!(pair_b(&f, 7, &[4, 5, 6, 7]), q(-1));
        assert_eq!(pair_b(&f, 7, &[1, 2, 3]), q(-1));
        // Neither a block nor a union of two.
        assert_eq!(pair_b(&f, 7, &[1, 4]), q(0));
        assert_eq!(pair_b(&f, 7, &[2, 5, 6]), q(0));
    }

    #[test]
    fn a_class_that_is_both_unions_counts_once() {
        // For F{1,2}{3}{4}{5,6,7}, the class B{1,2,3} satisfies the two-block
        // rule on both sides ({1,2}∪{3} and {4}∪{5,6,7}); it still counts +1.
        let f = FCurve::new(7, [&[1, 2], &[3], &[4], &[5, 6, 7]]).unwrap();
        assert_eq!(pair_b(&f, 7, &[1, 2, 3]), q(1));
    }

    #[test]
    fn psi_pairing_detects_singleton_blocks() {
        let f = FCurve::new(7, [&[1], &[2], &[3], &[4, 5, 6, 7]]).unwrap();
        let psi1 = DivisorClass::psi(7, 1).unwrap();
        let psi4 = DivisorClass::psi(7, 4).unwrap();
        assert_eq!(pair_fcurve(&f, &psi1).unwrap(), q(1));
        assert_eq!(pair_fcurve(&f, &psi4).unwrap(), q(0));
    }

    #[test]
    fn the_unique_fcurve_on_four_points_meets_each_boundary_point_once() {
        let curves = all_fcurves(4).unwrap();
        assert_eq!(curves.len(), 1);
        let f = curves[0];
        for idx in crate::all_boundary_classes(4).unwrap() {
            assert_eq!(pair_fcurve(&f, &DivisorClass::boundary(idx)).unwrap(), q(1));
        }
    }

    #[test]
    fn enumeration_counts_are_stirling_numbers() {
        assert_eq!(all_fcurves(5).unwrap().len(), 10);
        assert_eq!(all_fcurves(6).unwrap().len(), 65);
        assert_eq!(all_fcurves(7).unwrap().len(), 350);
    }

    #[test]
    fn types_are_partitions_into_four_parts() {
        assert_eq!(
            fcurve_types(7).unwrap(),
            vec![[1, 1, 1, 4], [1, 1, 2, 3], [1, 2, 2, 2]]
        );
        assert_eq!(fcurve_types(4).unwrap(), vec![[1, 1, 1, 1]]);
        assert_eq!(fcurve_types(8).unwrap().len(), 5);
    }

    #[test]
    fn representative_of_a_type_has_that_type() {
        let f = FCurve::from_type(7, [4, 1, 1, 1]).unwrap();
        assert_eq!(f.sizes(), [1, 1, 1, 4]);
        assert_eq!(f.to_string(), "F{1}{2}{3}{4,5,6,7}");
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(FCurve::new(7, [&[1], &[2], &[3], &[4, 5, 6]]).is_err());
        assert!(FCurve::new(7, [&[1], &[1], &[3], &[4, 5, 6, 7]]).is_err());
        assert!(FCurve::new(7, [&[], &[1, 2], &[3], &[4, 5, 6, 7]]).is_err());
        assert!(FCurve::from_type(7, [1, 1, 1, 3]).is_err());
        assert!(FCurve::from_type(7, [0, 1, 2, 4]).is_err());
    }

    #[test]
    fn permutation_action_preserves_type() {
        let f = FCurve::new(7, [&[1, 2], &[3], &[4], &[5, 6, 7]]).unwrap();
        let perm = [7, 6, 5, 4, 3, 2, 1];
        let g = f.apply_permutation(&perm).unwrap();
        assert_eq!(g.sizes(), f.sizes());
        assert_eq!(g.to_string(), "F{1,2,3}{4}{5}{6,7}");
    }
}
