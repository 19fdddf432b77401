//! Sparse divisor classes in boundary/ψ coordinates.
//!
//! A [`DivisorClass`] is a formal ℚ-combination of canonical boundary classes
//! B_I and ψ-classes ψ_i on M̄₀,ₙ.  Coordinates are stored sparsely — absent
//! means zero — and zero coefficients are pruned on every operation, so two
//! classes with identical coordinates compare equal structurally.
//!
//! Structural equality is equality of coordinate vectors, not of divisor
//! classes in N¹(M̄₀,ₙ): for the latter, reduce modulo the Keel relations
//! first (see [`crate::relations::class_equal`]).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::boundary::{check_n, BoundaryIndex};
use crate::rational::{format_q, Q};
use crate::{Error, Result};

/// A ℚ-linear combination of boundary classes and ψ-classes on M̄₀,ₙ.
#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    n: u8,
    boundary: BTreeMap<BoundaryIndex, Q>,
    psi: BTreeMap<u8, Q>,
}

impl DivisorClass {
    /// The zero class on M̄₀,ₙ.
    pub fn zero(n: u8) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            boundary: BTreeMap::new(),
            psi: BTreeMap::new(),
        })
    }

    /// The single boundary class 1·B_I.
    pub fn boundary(index: BoundaryIndex) -> Self {
        let mut boundary = BTreeMap::new();
        boundary.insert(index, Q::from_integer(1.into()));
        Self {
            n: index.n(),
            boundary,
            psi: BTreeMap::new(),
        }
    }

    /// The single ψ-class ψ_i.
    pub fn psi(n: u8, i: u8) -> Result<Self> {
        check_n(n)?;
        if i < 1 || i > n {
            return Err(Error::InvalidArgument(format!(
                "psi index {i} outside 1..={n}"
            )));
        }
        let mut psi = BTreeMap::new();
        psi.insert(i, Q::from_integer(1.into()));
        Ok(Self {
            n,
            boundary: BTreeMap::new(),
            psi,
        })
    }

    /// Builds a class from explicit coordinate maps, pruning zeros.
    pub fn from_parts(
        n: u8,
        boundary: impl IntoIterator<Item = (BoundaryIndex, Q)>,
        psi: impl IntoIterator<Item = (u8, Q)>,
    ) -> Result<Self> {
        let mut class = Self::zero(n)?;
        for (idx, coeff) in boundary {
            class.add_boundary_term(idx, coeff)?;
        }
        for (i, coeff) in psi {
            class.add_psi_term(i, coeff)?;
        }
        Ok(class)
    }

    /// The ambient number of marked points.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Nonzero boundary coordinates, in canonical index order.
    pub fn boundary_coeffs(&self) -> &BTreeMap<BoundaryIndex, Q> {
        &self.boundary
    }

    /// Nonzero ψ coordinates, by marked point.
    pub fn psi_coeffs(&self) -> &BTreeMap<u8, Q> {
        &self.psi
    }

    /// The coefficient of B_I (zero when absent).
    pub fn boundary_coeff(&self, index: &BoundaryIndex) -> Q {
        self.boundary.get(index).cloned().unwrap_or_else(Q::zero)
    }

    /// The coefficient of ψ_i (zero when absent).
    pub fn psi_coeff(&self, i: u8) -> Q {
        self.psi.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    /// Whether every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.boundary.is_empty() && self.psi.is_empty()
    }

    /// Whether the class has no ψ components.
    pub fn is_boundary_supported(&self) -> bool {
        self.psi.is_empty()
    }

    /// Adds `coeff · B_I` in place.
    pub fn add_boundary_term(&mut self, index: BoundaryIndex, coeff: Q) -> Result<()> {
        if index.n() != self.n {
            return Err(Error::MismatchedN(self.n, index.n()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.boundary.entry(index).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.boundary.remove(&index);
        }
        Ok(())
    }

    /// Adds `coeff · ψ_i` in place.
    pub fn add_psi_term(&mut self, i: u8, coeff: Q) -> Result<()> {
        if i < 1 || i > self.n {
            return Err(Error::InvalidArgument(format!(
                "psi index {i} outside 1..={}",
                self.n
            )));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.psi.entry(i).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.psi.remove(&i);
        }
        Ok(())
    }

    /// The sum of two classes on the same M̄₀,ₙ.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedN(self.n, other.n));
        }
        let mut out = self.clone();
        for (idx, coeff) in &other.boundary {
            out.add_boundary_term(*idx, coeff.clone())?;
        }
        for (&i, coeff) in &other.psi {
            out.add_psi_term(i, coeff.clone())?;
        }
        Ok(out)
    }

    /// The difference of two classes on the same M̄₀,ₙ.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scaled(&Q::from_integer((-1).into())))
    }

    /// The class with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self {
                n: self.n,
                boundary: BTreeMap::new(),
                psi: BTreeMap::new(),
            };
        }
        Self {
            n: self.n,
            boundary: self
                .boundary
                .iter()
                .map(|(idx, c)| (*idx, c * factor))
                .collect(),
            psi: self.psi.iter().map(|(&i, c)| (i, c * factor)).collect(),
        }
    }

    /// The class with every index and ψ-label moved by the permutation
    /// (images of 1..=n in order).
    pub fn apply_permutation(&self, perm: &[u8]) -> Result<Self> {
        let mut out = Self::zero(self.n)?;
        for (idx, coeff) in &self.boundary {
            out.add_boundary_term(idx.apply_permutation(perm)?, coeff.clone())?;
        }
        for (&i, coeff) in &self.psi {
            let image = *perm
                .get(usize::from(i) - 1)
                .ok_or_else(|| Error::InvalidArgument("short permutation".into()))?;
            out.add_psi_term(image, coeff.clone())?;
        }
        Ok(out)
    }

    /// Serializes to the JSON shape
    /// `{"n": 7, "boundary": {"B{1,4}": "12", …}, "psi": {"3": "1/2", …}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let boundary: serde_json::Map<String, serde_json::Value> = self
            .boundary
            .iter()
            .map(|(idx, c)| (idx.to_string(), serde_json::Value::String(format_q(c))))
            .collect();
        let psi: serde_json::Map<String, serde_json::Value> = self
            .psi
            .iter()
            .map(|(i, c)| (i.to_string(), serde_json::Value::String(format_q(c))))
            .collect();
        serde_json::json!({
            "n": self.n,
            "boundary": boundary,
            "psi": psi,
        })
    }

    /// Parses the JSON shape produced by [`Self::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("divisor class must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("missing integer field \"n\"".into()))?;
        let n = u8::try_from(n).map_err(|_| Error::Json(format!("n = {n} out of range")))?;
        let mut class = Self::zero(n)?;
        if let Some(map) = obj.get("boundary") {
            let map = map
                .as_object()
                .ok_or_else(|| Error::Json("\"boundary\" must be an object".into()))?;
            for (key, val) in map {
                let idx = crate::parse::parse_boundary_symbol(n, key)?;
                class.add_boundary_term(idx, json_rational(val)?)?;
            }
        }
        if let Some(map) = obj.get("psi") {
            let map = map
                .as_object()
                .ok_or_else(|| Error::Json("\"psi\" must be an object".into()))?;
            for (key, val) in map {
                let i: u8 = key
                    .parse()
                    .map_err(|_| Error::Json(format!("bad psi key {key:?}")))?;
                class.add_psi_term(i, json_rational(val)?)?;
            }
        }
        Ok(class)
    }
}

/// Reads a rational from a JSON string (`"p/q"`) or integer literal.
pub(crate) fn json_rational(value: &serde_json::Value) -> Result<Q> {
    match value {
        serde_json::Value::String(s) => crate::rational::parse_q(s),
        serde_json::Value::Number(num) => num
            .as_i64()
            .map(crate::rational::q)
            .ok_or_else(|| Error::Json(format!("non-integer numeric coefficient {num}"))),
        other => Err(Error::Json(format!("bad coefficient {other}"))),
    }
}

impl fmt::Display for DivisorClass {
    /// Renders in the expression grammar: `12*B{1,4} + 1/2*psi_3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut write_term =
            |f: &mut fmt::Formatter<'_>, coeff: &Q, sym: String| -> fmt::Result {
                let negative = coeff < &Q::zero();
                let abs = if negative { -coeff.clone() } else { coeff.clone() };
                if first {
                    first = false;
                    if negative {
                        write!(f, "-")?;
                    }
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                write!(f, "{}*{sym}", format_q(&abs))
            };
        for (idx, coeff) in &self.boundary {
            write_term(f, coeff, idx.to_string())?;
        }
        for (i, coeff) in &self.psi {
            write_term(f, coeff, format!("psi_{i}"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass(n={}, {})", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::canonical_boundary;
    use crate::rational::{q, qq};

    fn b(n: u8, elems: &[u8]) -> BoundaryIndex {
        canonical_boundary(n, elems.iter().copied()).unwrap()
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut d = DivisorClass::zero(7).unwrap();
        d.add_boundary_term(b(7, &[1, 2]), q(3)).unwrap();
        d.add_boundary_term(b(7, &[1, 2]), q(-3)).unwrap();
        assert!(d.is_zero());
        assert!(d.boundary_coeffs().is_empty());
    }

    #[test]
    fn terms_on_the_same_class_accumulate() {
        let mut d = DivisorClass::zero(7).unwrap();
        d.add_boundary_term(b(7, &[1, 2]), q(1)).unwrap();
        // {3,...,7} is the complement of {1,2}: same canonical class.
        d.add_boundary_term(b(7, &[3, 4, 5, 6, 7]), q(2)).unwrap();
        assert_eq!(d.boundary_coeff(&b(7, &[1, 2])), q(3));
        assert_eq!(d.boundary_coeffs().len(), 1);
    }

    #[test]
    fn arithmetic_respects_n() {
        let d7 = DivisorClass::boundary(b(7, &[1, 2]));
        let d8 = DivisorClass::boundary(b(8, &[1, 2]));
        assert!(d7.checked_add(&d8).is_err());
    }

    #[test]
    fn scaling_and_subtraction() {
        let d = DivisorClass::from_parts(
            7,
            [(b(7, &[1, 2]), q(2)), (b(7, &[1, 2, 3]), qq(1, 2))],
            [(4, q(1))],
        )
        .unwrap();
        let twice = d.scaled(&q(2));
        assert_eq!(twice.boundary_coeff(&b(7, &[1, 2, 3])), q(1));
        assert_eq!(twice.psi_coeff(4), q(2));
        assert!(d.checked_sub(&d).unwrap().is_zero());
        assert!(d.scaled(&q(0)).is_zero());
    }

    #[test]
    fn display_renders_the_grammar() {
        let d = DivisorClass::from_parts(
            7,
            [(b(7, &[1, 4]), q(12)), (b(7, &[2, 5, 6]), q(-15))],
            [(3, qq(1, 2))],
        )
        .unwrap();
        assert_eq!(d.to_string(), "12*B{1,4} - 15*B{2,5,6} + 1/2*psi_3");
        assert_eq!(DivisorClass::zero(7).unwrap().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let d = DivisorClass::from_parts(
            7,
            [(b(7, &[1, 4]), qq(-5, 3)), (b(7, &[1, 2, 3]), q(4))],
            [(7, qq(2, 7))],
        )
        .unwrap();
        let back = DivisorClass::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn permutation_acts_on_both_coordinate_blocks() {
        let d = DivisorClass::from_parts(7, [(b(7, &[1, 2]), q(1))], [(1, q(5))]).unwrap();
        let perm = [7, 6, 5, 4, 3, 2, 1];
        let moved = d.apply_permutation(&perm).unwrap();
        assert_eq!(moved.boundary_coeff(&b(7, &[6, 7])), q(1));
        assert_eq!(moved.psi_coeff(7), q(5));
    }
}
