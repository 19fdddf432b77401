//! The Sₙ-invariant slice of the divisor algebra.
//!
//! A symmetric divisor class is a combination of the size sums
//! B_i = Σ_{|I|=i} B_I for i = 2, …, ⌊n/2⌋, with B_i = B_{n−i}.  The slice
//! carries its own curve classes — symmetric F-curve types, sweeping curves
//! C_j, and (for n = 7) the curve A — and an exact intersection pairing:
//!
//! - F-types delegate to [`pair_fcurve`] on a representative partition; the
//!   value is independent of the representative.
//! - C_j pairs with the pure size sum Σ_{|I|=i} B_I as j when i = j−1, as
//!   −(j−2) when i = j, and 0 otherwise; against the symmetric basis class
//!   B_i this contributes at both sizes i and n−i (sizes outside [2, n−2]
//!   contribute nothing, and i = n−i is counted once).
//! - A's pairings with B₂ and B₃ are stored constants; the ψ and K columns
//!   follow by linearity.
//!
//! [`canonical_and_psi`] expresses K and ψ = Σψ_i in symmetric coordinates,
//! and [`nef_check`] tests nonnegativity against every symmetric F-curve
//! type.

use std::fmt;

use num_traits::Zero;

use crate::boundary::{all_boundary_classes, check_n};
use crate::divisor::DivisorClass;
use crate::fcurve::{fcurve_types, pair_fcurve, FCurve};
use crate::rational::{format_q, q, qq, Q};
use crate::{Error, Result};

/// A symmetric divisor class in the basis B₂, …, B_⌊n/2⌋.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricDivisor {
    n: u8,
    /// `coeffs[k]` is the coefficient of B_{k+2}.
    coeffs: Vec<Q>,
}

impl SymmetricDivisor {
    /// Builds a symmetric divisor from its ⌊n/2⌋ − 1 coordinates.
    pub fn new(n: u8, coeffs: Vec<Q>) -> Result<Self> {
        check_n(n)?;
        let expected = usize::from(n / 2) - 1;
        if coeffs.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} symmetric coordinates for n = {n}, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { n, coeffs })
    }

    /// The zero symmetric divisor.
    pub fn zero(n: u8) -> Result<Self> {
        let len = usize::from(n.max(4) / 2).saturating_sub(1);
        Self::new(n, vec![Q::zero(); len])
    }

    /// The ambient number of marked points.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Coordinates in basis order B₂, …, B_⌊n/2⌋.
    #[inline]
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The coefficient of B_size, folding size and n−size together.
    pub fn coeff(&self, size: u8) -> Q {
        let folded = size.min(self.n - size);
        self.coeffs
            .get(usize::from(folded).wrapping_sub(2))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Whether every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    /// Expands into canonical boundary classes: coordinate i distributes over
    /// every canonical class of size i, coefficient unchanged.  Sizes i and
    /// n−i name the same canonical classes and are never double-counted.
    pub fn expand(&self) -> DivisorClass {
        let mut out = DivisorClass::zero(self.n).expect("n validated on construction");
        if self.is_zero() {
            return out;
        }
        for idx in all_boundary_classes(self.n).expect("n validated on construction") {
            let coeff = self.coeff(idx.size());
            out.add_boundary_term(idx, coeff)
                .expect("index and class share n");
        }
        out
    }

    /// Projects a general divisor class onto symmetric coordinates.
    ///
    /// Succeeds when the class is literally Sₙ-invariant in its coordinates:
    /// boundary coefficients constant on each size, and ψ coordinates either
    /// absent or all n equal (a uniform ψ component folds in via
    /// ψ = K + 2B).  Anything else is rejected.
    pub fn from_class(class: &DivisorClass) -> Result<Self> {
        let n = class.n();
        let mut base = DivisorClass::from_parts(
            n,
            class
                .boundary_coeffs()
                .iter()
                .map(|(idx, c)| (*idx, c.clone())),
            [],
        )?;
        if !class.psi_coeffs().is_empty() {
            let first = class.psi_coeff(1);
            let uniform = !first.is_zero() && (1..=n).all(|i| class.psi_coeff(i) == first);
            if !uniform {
                return Err(Error::InvalidArgument(
                    "divisor is not symmetric: ψ coordinates are not uniform".into(),
                ));
            }
            // A uniform ψ component is Σψ_i scaled; fold it in as boundary
            // classes via ψ = K + 2B.
            let (_, psi_sym) = canonical_and_psi(n)?;
            base = base.checked_add(&psi_sym.expand().scaled(&first))?;
        }
        let mut per_size: Vec<Option<Q>> = vec![None; usize::from(n / 2) + 1];
        for idx in all_boundary_classes(n)? {
            let size = usize::from(idx.size());
            let coeff = base.boundary_coeff(&idx);
            match &per_size[size] {
                None => per_size[size] = Some(coeff),
                Some(existing) if *existing == coeff => {}
                Some(_) => {
                    return Err(Error::InvalidArgument(format!(
                        "divisor is not symmetric: size-{size} coefficients differ"
                    )))
                }
            }
        }
        let coeffs = (2..=usize::from(n / 2))
            .map(|s| per_size[s].clone().unwrap_or_else(Q::zero))
            .collect();
        Self::new(n, coeffs)
    }
}

impl fmt::Display for SymmetricDivisor {
    /// Renders as `5*B2 + 3*B3`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
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
            write!(f, "{}*B{}", format_q(&abs), k + 2)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricDivisor(n={}, {})", self.n, self)
    }
}

/// Expands a symmetric divisor into canonical boundary classes.
pub fn expand_symmetric(divisor: &SymmetricDivisor) -> DivisorClass {
    divisor.expand()
}

/// (K, ψ) in symmetric coordinates: K = Σ (i(n−i)/(n−1) − 2)·B_i and
/// ψ = K + 2B with B = Σ B_i.
pub fn canonical_and_psi(n: u8) -> Result<(SymmetricDivisor, SymmetricDivisor)> {
    check_n(n)?;
    let mut k_coeffs = Vec::new();
    let mut psi_coeffs = Vec::new();
    for i in 2..=i64::from(n / 2) {
        let c = qq(i * (i64::from(n) - i), i64::from(n) - 1) - q(2);
        psi_coeffs.push(&c + q(2));
        k_coeffs.push(c);
    }
    Ok((
        SymmetricDivisor::new(n, k_coeffs)?,
        SymmetricDivisor::new(n, psi_coeffs)?,
    ))
}

/// The kinds of symmetric curve classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveKind {
    /// A symmetric F-curve type: block sizes summing to n.
    FType([u8; 4]),
    /// The sweeping curve C_j, 3 ≤ j ≤ n−1.
    Sweeping(u8),
    /// The extra covering curve of B₂ on M̄₀,₇.
    CurveA,
}

/// A curve class usable in symmetric pairings.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct CurveClass {
    n: u8,
    kind: CurveKind,
}

impl CurveClass {
    /// The symmetric F-curve type with the given block sizes.
    pub fn fcurve_type(n: u8, sizes: [u8; 4]) -> Result<Self> {
        // Representative construction performs the validation.
        FCurve::from_type(n, sizes)?;
        let mut sizes = sizes;
        sizes.sort_unstable();
        Ok(Self {
            n,
            kind: CurveKind::FType(sizes),
        })
    }

    /// The sweeping curve C_j.
    pub fn sweeping(n: u8, j: u8) -> Result<Self> {
        check_n(n)?;
        if !(3..=n - 1).contains(&j) {
            return Err(Error::InvalidArgument(format!(
                "sweeping index {j} outside 3..={}",
                n - 1
            )));
        }
        Ok(Self {
            n,
            kind: CurveKind::Sweeping(j),
        })
    }

    /// The curve A; defined only on M̄₀,₇.
    pub fn curve_a(n: u8) -> Result<Self> {
        if n != 7 {
            return Err(Error::UnsupportedN(n, "curve A exists only for n = 7"));
        }
        Ok(Self {
            n: 7,
            kind: CurveKind::CurveA,
        })
    }

    /// The ambient number of marked points.
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }

    /// The curve kind.
    #[inline]
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// A representative F-curve, for F-type kinds.
    pub fn representative(&self) -> Option<FCurve> {
        match self.kind {
            CurveKind::FType(sizes) => Some(
                FCurve::from_type(self.n, sizes).expect("sizes validated on construction"),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for CurveClass {
    /// Renders in the curve-label convention of the intersection table:
    /// `F_{1,1,1,4}`, `C4`, `A`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::FType([a, b, c, d]) => write!(f, "F_{{{a},{b},{c},{d}}}"),
            CurveKind::Sweeping(j) => write!(f, "C{j}"),
            CurveKind::CurveA => write!(f, "A"),
        }
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lemma-style pairing of C_j against the pure size-i sum Σ_{|I|=i} B_I.
fn sweeping_size_value(n: u8, j: u8, i: i64) -> Q {
    if i < 2 || i > i64::from(n) - 2 {
        return Q::zero();
    }
    if i == i64::from(j) - 1 {
        q(i64::from(j))
    } else if i == i64::from(j) {
        q(-(i64::from(j) - 2))
    } else {
        Q::zero()
    }
}

/// The intersection number C · D for a symmetric divisor D.
pub fn pair_curve(curve: &CurveClass, divisor: &SymmetricDivisor) -> Result<Q> {
    if curve.n() != divisor.n() {
        return Err(Error::MismatchedN(curve.n(), divisor.n()));
    }
    let n = divisor.n();
    match curve.kind {
        CurveKind::FType(_) => {
            let rep = curve.representative().expect("F-type has a representative");
            pair_fcurve(&rep, &divisor.expand())
        }
        CurveKind::Sweeping(j) => {
            let mut total = Q::zero();
            for (k, coeff) in divisor.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let i = k as i64 + 2;
                let mut value = sweeping_size_value(n, j, i);
                // The basis class B_i aggregates sizes i and n−i.
                if i64::from(n) - i != i {
                    value += sweeping_size_value(n, j, i64::from(n) - i);
                }
                total += coeff * value;
            }
            Ok(total)
        }
        CurveKind::CurveA => {
            // Stored primitive pairings: A·B₂ = −3, A·B₃ = 4.
            Ok(divisor.coeff(2) * q(-3) + divisor.coeff(3) * q(4))
        }
    }
}

/// One row of the intersection table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    /// Curve label, e.g. `F_{1,1,1,4}`.
    pub label: String,
    /// Pairings against ψ, K, B₂, B₃ in that order.
    pub values: [Q; 4],
}

/// The 7 × 4 intersection table of curve classes against ψ, K, B₂, B₃ on
/// M̄₀,₇.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionTable {
    /// Column headers.
    pub columns: [&'static str; 4],
    /// Rows F_{1,1,1,4}, F_{1,1,2,3}, F_{1,2,2,2}, C₄, C₅, C₆, A.
    pub rows: Vec<TableRow>,
}

impl IntersectionTable {
    /// The row with the given label, if present.
    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// JSON rendering with rationals as canonical strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "columns": self.columns,
            "rows": self
                .rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "curve": row.label,
                        "values": row.values.iter().map(format_q).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Computes the intersection table for M̄₀,₇ from the pairing rules; every
/// entry, including the ψ and K columns of the stored A row, comes out of
/// [`pair_curve`].
pub fn intersection_table(n: u8) -> Result<IntersectionTable> {
    if n != 7 {
        return Err(Error::UnsupportedN(n, "the intersection table is an n = 7 result"));
    }
    let (k_sym, psi_sym) = canonical_and_psi(7)?;
    let b2 = SymmetricDivisor::new(7, vec![q(1), q(0)])?;
    let b3 = SymmetricDivisor::new(7, vec![q(0), q(1)])?;
    let curves = [
        CurveClass::fcurve_type(7, [1, 1, 1, 4])?,
        CurveClass::fcurve_type(7, [1, 1, 2, 3])?,
        CurveClass::fcurve_type(7, [1, 2, 2, 2])?,
        CurveClass::sweeping(7, 4)?,
        CurveClass::sweeping(7, 5)?,
        CurveClass::sweeping(7, 6)?,
        CurveClass::curve_a(7)?,
    ];
    let rows = curves
        .iter()
        .map(|curve| {
            Ok(TableRow {
                label: curve.to_string(),
                values: [
                    pair_curve(curve, &psi_sym)?,
                    pair_curve(curve, &k_sym)?,
                    pair_curve(curve, &b2)?,
                    pair_curve(curve, &b3)?,
                ],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntersectionTable {
        columns: ["psi", "K", "B2", "B3"],
        rows,
    })
}

/// Whether the symmetric divisor pairs nonnegatively with every symmetric
/// F-curve type of M̄₀,ₙ.
pub fn nef_check(divisor: &SymmetricDivisor) -> Result<bool> {
    for sizes in fcurve_types(divisor.n())? {
        let curve = CurveClass::fcurve_type(divisor.n(), sizes)?;
        if pair_curve(&curve, divisor)? < Q::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(coeffs: [Q; 2]) -> SymmetricDivisor {
        SymmetricDivisor::new(7, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn expansion_distributes_over_sizes() {
        let b2 = sym([q(1), q(0)]).expand();
        assert_eq!(b2.boundary_coeffs().len(), 21);
        assert!(b2.boundary_coeffs().keys().all(|idx| idx.size() == 2));
        let b3 = sym([q(0), q(1)]).expand();
        assert_eq!(b3.boundary_coeffs().len(), 35);
        // n = 6: sizes 3 and 3 coincide; 10 canonical classes, single count.
        let b3_even = SymmetricDivisor::new(6, vec![q(0), q(1)])
            .unwrap()
            .expand();
        assert_eq!(b3_even.boundary_coeffs().len(), 10);
        assert!(b3_even.boundary_coeffs().values().all(|c| *c == q(1)));
    }

    #[test]
    fn canonical_and_psi_coordinates() {
        let (k7, psi7) = canonical_and_psi(7).unwrap();
        assert_eq!(k7.coeffs(), &[qq(-1, 3), q(0)]);
        assert_eq!(psi7.coeffs(), &[qq(5, 3), q(2)]);
        let (k6, psi6) = canonical_and_psi(6).unwrap();
        assert_eq!(k6.coeffs(), &[qq(-2, 5), qq(-1, 5)]);
        assert_eq!(psi6.coeffs(), &[qq(8, 5), qq(9, 5)]);
        let (k5, psi5) = canonical_and_psi(5).unwrap();
        assert_eq!(k5.coeffs(), &[qq(-1, 2)]);
        assert_eq!(psi5.coeffs(), &[qq(3, 2)]);
    }

    #[test]
    fn table_matches_the_stored_values() {
        let table = intersection_table(7).unwrap();
        let expect: &[(&str, [i64; 4])] = &[
            ("F_{1,1,1,4}", [3, -1, 3, -1]),
            ("F_{1,1,2,3}", [2, 0, 0, 1]),
            ("F_{1,2,2,2}", [1, 1, -3, 3]),
            ("C4", [4, 0, 0, 2]),
            ("C5", [5, 1, -3, 5]),
            ("C6", [10, -2, 6, 0]),
            ("A", [3, 1, -3, 4]),
        ];
        assert_eq!(table.rows.len(), 7);
        for (label, values) in expect {
            let row = table.row(label).unwrap_or_else(|| panic!("missing row {label}"));
            let expected: Vec<Q> = values.iter().map(|&v| q(v)).collect();
            assert_eq!(row.values.to_vec(), expected, "row {label}");
        }
    }

    #[test]
    fn sweeping_pairing_folds_both_sizes() {
        // C₄·B₃ sees size 3 (value 4) and size 4 (value −2) on one class.
        let c4 = CurveClass::sweeping(7, 4).unwrap();
        assert_eq!(pair_curve(&c4, &sym([q(0), q(1)])).unwrap(), q(2));
        // C₆'s positive size is 5, folded into B₂.
        let c6 = CurveClass::sweeping(7, 6).unwrap();
        assert_eq!(pair_curve(&c6, &sym([q(1), q(0)])).unwrap(), q(6));
        assert_eq!(pair_curve(&c6, &sym([q(0), q(1)])).unwrap(), q(0));
    }

    #[test]
    fn ftype_pairing_is_representative_independent() {
        use crate::fcurve::all_fcurves;
        let divisor = sym([qq(5, 3), q(2)]);
        let expanded = divisor.expand();
        for f in all_fcurves(7).unwrap() {
            let class = CurveClass::fcurve_type(7, f.sizes()).unwrap();
            assert_eq!(
                pair_fcurve(&f, &expanded).unwrap(),
                pair_curve(&class, &divisor).unwrap(),
                "partition {f}"
            );
        }
    }

    #[test]
    fn psi_is_k_plus_twice_total_boundary_for_every_curve_kind() {
        let (k_sym, psi_sym) = canonical_and_psi(7).unwrap();
        let total_b = sym([q(1), q(1)]);
        let curves = [
            CurveClass::fcurve_type(7, [1, 1, 2, 3]).unwrap(),
            CurveClass::sweeping(7, 5).unwrap(),
            CurveClass::curve_a(7).unwrap(),
        ];
        for c in curves {
            let lhs = pair_curve(&c, &psi_sym).unwrap();
            let rhs = pair_curve(&c, &k_sym).unwrap() + q(2) * pair_curve(&c, &total_b).unwrap();
            assert_eq!(lhs, rhs, "{c}");
        }
    }

    #[test]
    fn nef_examples() {
        assert!(nef_check(&sym([q(2), q(2)])).unwrap());
        assert!(nef_check(&sym([qq(2, 9), qq(2, 3)])).unwrap());
        assert!(!nef_check(&sym([q(1), q(0)])).unwrap());
        assert!(!nef_check(&sym([q(0), q(1)])).unwrap());
    }

    #[test]
    fn from_class_round_trips_and_rejects_asymmetry() {
        let d = sym([qq(5, 3), q(2)]);
        let back = SymmetricDivisor::from_class(&d.expand()).unwrap();
        assert_eq!(back, d);
        let mut lopsided = d.expand();
        lopsided
            .add_boundary_term(crate::canonical_boundary(7, [1, 2]).unwrap(), q(1))
            .unwrap();
        assert!(SymmetricDivisor::from_class(&lopsided).is_err());
        let with_psi = DivisorClass::psi(7, 3).unwrap();
        assert!(SymmetricDivisor::from_class(&with_psi).is_err());
    }

    #[test]
    fn uniform_psi_components_fold_into_boundaries() {
        // Σψ_i as individual coordinates projects to (5/3, 2).
        let mut total_psi = DivisorClass::zero(7).unwrap();
        for i in 1..=7 {
            total_psi = total_psi
                .checked_add(&DivisorClass::psi(7, i).unwrap())
                .unwrap();
        }
        let projected = SymmetricDivisor::from_class(&total_psi).unwrap();
        assert_eq!(projected, sym([qq(5, 3), q(2)]));
    }

    #[test]
    fn curve_constructors_validate() {
        assert!(CurveClass::sweeping(7, 2).is_err());
        assert!(CurveClass::sweeping(7, 7).is_err());
        assert!(CurveClass::curve_a(6).is_err());
        assert!(CurveClass::fcurve_type(7, [1, 1, 1, 3]).is_err());
        assert_eq!(
            CurveClass::fcurve_type(7, [4, 1, 1, 1]).unwrap().to_string(),
            "F_{1,1,1,4}"
        );
    }
}
