//! End-to-end algebra scenarios: parsed expressions, Keel normal forms, and
//! the F-curve pairing working together across modules.

use m0n_core::parse::parse_divisor;
use m0n_core::rational::{q, qq};
use m0n_core::{
    all_boundary_classes, all_fcurves, canonical_and_psi, canonical_boundary, class_equal,
    intersection_table, normal_form, pair_curve, pair_fcurve, relation_basis, CurveClass,
    DivisorClass, FCurve, SymmetricDivisor,
};

/// Every identity between K, ψ, B₂ and B₃ must survive both proof routes:
/// reduction to identical normal forms, and agreement of all 350 pairings.
#[test]
fn symmetric_identities_hold_by_normal_form_and_by_pairing() {
    let (k, psi) = canonical_and_psi(7).unwrap();
    let k = k.expand();
    let psi = psi.expand();
    let b2 = SymmetricDivisor::new(7, vec![q(1), q(0)]).unwrap().expand();
    let b3 = SymmetricDivisor::new(7, vec![q(0), q(1)]).unwrap().expand();

    let cases = [
        (k.clone(), b2.scaled(&qq(-1, 3))),
        (
            psi.clone(),
            b2.scaled(&qq(5, 3)).checked_add(&b3.scaled(&q(2))).unwrap(),
        ),
        (b2.clone(), k.scaled(&q(-3))),
        (
            b3.clone(),
            k.scaled(&qq(5, 2)).checked_add(&psi.scaled(&qq(1, 2))).unwrap(),
        ),
    ];
    let curves = all_fcurves(7).unwrap();
    assert_eq!(curves.len(), 350);
    for (lhs, rhs) in cases {
        assert!(class_equal(&lhs, &rhs).unwrap());
        assert_eq!(normal_form(&lhs).unwrap(), normal_form(&rhs).unwrap());
        for curve in &curves {
            assert_eq!(
                pair_fcurve(curve, &lhs).unwrap(),
                pair_fcurve(curve, &rhs).unwrap(),
                "pairing differs on {curve}"
            );
        }
    }
}

/// A divisor written in the expression grammar pairs the same as the
/// equivalent hand-built class.
#[test]
fn parsed_expressions_agree_with_constructed_classes() {
    let parsed = parse_divisor(7, "psi - 4*K").unwrap();
    let (k, psi) = canonical_and_psi(7).unwrap();
    let built = psi.expand().checked_sub(&k.expand().scaled(&q(4))).unwrap();
    assert_eq!(parsed, built);

    // In (B₂, B₃) coordinates ψ − 4K = 3B₂ + 2B₃.
    let symmetric = SymmetricDivisor::from_class(&parsed).unwrap();
    assert_eq!(symmetric.coeff(2), q(3));
    assert_eq!(symmetric.coeff(3), q(2));

    let explicit = parse_divisor(7, "2*B{1,2} - 1/3*B{3,4,5} + psi_6").unwrap();
    let mut by_hand = DivisorClass::zero(7).unwrap();
    by_hand
        .add_boundary_term(canonical_boundary(7, [1, 2]).unwrap(), q(2))
        .unwrap();
    by_hand
        .add_boundary_term(canonical_boundary(7, [3, 4, 5]).unwrap(), qq(-1, 3))
        .unwrap();
    by_hand.add_psi_term(6, q(1)).unwrap();
    assert_eq!(explicit, by_hand);
}

/// Pairing is invariant under relabelling the marked points on both sides.
#[test]
fn pairing_is_equivariant_under_relabelling() {
    let divisor = parse_divisor(7, "B{1,2} + 2*B{1,3,4} - psi_2").unwrap();
    let curve = FCurve::new(7, [&[1], &[2, 3], &[4, 5], &[6, 7]]).unwrap();
    let base = pair_fcurve(&curve, &divisor).unwrap();
    // A 7-cycle and an involution.
    for perm in [
        vec![2u8, 3, 4, 5, 6, 7, 1],
        vec![7u8, 6, 5, 4, 3, 2, 1],
    ] {
        let moved = pair_fcurve(
            &curve.apply_permutation(&perm).unwrap(),
            &divisor.apply_permutation(&perm).unwrap(),
        )
        .unwrap();
        assert_eq!(moved, base);
    }
}

/// The table of symmetric pairings must agree with explicit representative
/// curves paired against explicit expanded divisors.
#[test]
fn table_entries_match_representative_pairings() {
    let table = intersection_table(7).unwrap();
    let divisors: [(usize, SymmetricDivisor); 2] = [
        (2, SymmetricDivisor::new(7, vec![q(1), q(0)]).unwrap()),
        (3, SymmetricDivisor::new(7, vec![q(0), q(1)]).unwrap()),
    ];
    for sizes in [[1u8, 1, 1, 4], [1, 1, 2, 3], [1, 2, 2, 2]] {
        let class = CurveClass::fcurve_type(7, sizes).unwrap();
        let representative = class.representative().unwrap();
        let label = format!("F_{{{},{},{},{}}}", sizes[0], sizes[1], sizes[2], sizes[3]);
        let row = table.row(&label).unwrap();
        for (col, symmetric) in &divisors {
            let direct = pair_fcurve(&representative, &symmetric.expand()).unwrap();
            assert_eq!(&direct, &row.values[*col]);
            assert_eq!(direct, pair_curve(&class, symmetric).unwrap());
        }
    }
}

/// Quotient coordinates classify boundary expressions up to relations: two
/// textbook-equal sums get identical coordinates, and the coordinates of the
/// 56 classes span the full 42-dimensional quotient.
#[test]
fn quotient_coordinates_separate_and_span() {
    let basis = relation_basis(7).unwrap();
    let s12 = parse_divisor(
        7,
        "B{1,2} + B{1,2,5} + B{1,2,6} + B{1,2,7} + B{1,2,5,6} + B{1,2,5,7} + B{1,2,6,7} + B{3,4}",
    )
    .unwrap();
    let s13 = parse_divisor(
        7,
        "B{1,3} + B{1,3,5} + B{1,3,6} + B{1,3,7} + B{1,3,5,6} + B{1,3,5,7} + B{1,3,6,7} + B{2,4}",
    )
    .unwrap();
    assert_ne!(s12, s13);
    assert_eq!(
        basis.quotient_coords(&s12).unwrap(),
        basis.quotient_coords(&s13).unwrap()
    );
    assert!(class_equal(&s12, &s13).unwrap());

    let mut seen = std::collections::BTreeSet::new();
    for idx in all_boundary_classes(7).unwrap() {
        let coords = basis.quotient_coords(&DivisorClass::boundary(idx)).unwrap();
        assert_eq!(coords.len(), 42);
        seen.insert(format!("{coords:?}"));
    }
    // All 56 classes are distinct in the quotient (none of the Keel relations
    // identifies two single boundary classes).
    assert_eq!(seen.len(), 56);
}
