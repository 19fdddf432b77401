//! Randomized property tests over the exact algebra: relation orthogonality,
//! normal-form laws, grammar round trips, pairing equivariance, and solver
//! soundness on constructed-feasible systems.

use proptest::prelude::*;

use m0n_core::parse::parse_divisor;
use m0n_core::rational::{qq, Q};
use m0n_core::simplex::feasible_point;
use m0n_core::{
    all_boundary_classes, all_fcurves, canonical_boundary, class_equal, keel_relations,
    normal_form, pair_fcurve, DivisorClass,
};

fn arb_class(n: u8) -> impl Strategy<Value = DivisorClass> {
    let count = all_boundary_classes(n).unwrap().len();
    let terms = prop::collection::vec((0..count, -9i64..=9, 1i64..=4), 0..6);
    let psis = prop::collection::vec((1..=n, -6i64..=6, 1i64..=3), 0..3);
    (terms, psis).prop_map(move |(terms, psis)| {
        let classes = all_boundary_classes(n).unwrap();
        let mut class = DivisorClass::zero(n).unwrap();
        for (slot, numer, denom) in terms {
            class.add_boundary_term(classes[slot], qq(numer, denom)).unwrap();
        }
        for (i, numer, denom) in psis {
            class.add_psi_term(i, qq(numer, denom)).unwrap();
        }
        class
    })
}

fn arb_permutation(n: u8) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=n).collect::<Vec<u8>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any rational combination of Keel relations pairs to zero against any
    /// F-curve (n = 7: 350 curves, 196 generating relations).
    #[test]
    fn relation_combinations_pair_to_zero(
        picks in prop::collection::vec((0usize..196, -5i64..=5, 1i64..=3), 1..4),
        curve_index in 0usize..350,
    ) {
        let relations = keel_relations(7).unwrap();
        let curves = all_fcurves(7).unwrap();
        let mut combo = DivisorClass::zero(7).unwrap();
        for (slot, numer, denom) in picks {
            combo = combo
                .checked_add(&relations[slot % relations.len()].scaled(&qq(numer, denom)))
                .unwrap();
        }
        let value = pair_fcurve(&curves[curve_index % curves.len()], &combo).unwrap();
        prop_assert_eq!(value, Q::from_integer(0.into()));
    }

    /// Normal forms are idempotent, preserve the class, and commute with
    /// addition and scaling.
    #[test]
    fn normal_form_laws(a in arb_class(6), b in arb_class(6), numer in -7i64..=7, denom in 1i64..=3) {
        let nf_a = normal_form(&a).unwrap();
        prop_assert_eq!(&normal_form(&nf_a).unwrap(), &nf_a);
        prop_assert!(class_equal(&a, &nf_a).unwrap());

        let sum_nf = normal_form(&a.checked_add(&b).unwrap()).unwrap();
        let nf_sum = nf_a.checked_add(&normal_form(&b).unwrap()).unwrap();
        prop_assert_eq!(&sum_nf, &normal_form(&nf_sum).unwrap());

        let factor = qq(numer, denom);
        prop_assert_eq!(
            normal_form(&a.scaled(&factor)).unwrap(),
            nf_a.scaled(&factor)
        );
    }

    /// class_equal is exactly "normal forms coincide".
    #[test]
    fn class_equality_matches_normal_forms(a in arb_class(6), b in arb_class(6)) {
        let equal = class_equal(&a, &b).unwrap();
        let nf_match = normal_form(&a).unwrap() == normal_form(&b).unwrap();
        prop_assert_eq!(equal, nf_match);
    }

    /// Printing a class and parsing it back is the identity.
    #[test]
    fn grammar_round_trip(class in arb_class(7)) {
        let printed = class.to_string();
        let reparsed = parse_divisor(7, &printed).unwrap();
        prop_assert_eq!(reparsed, class);
    }

    /// Pairing a relabelled curve against a relabelled divisor gives the
    /// original value, for arbitrary relabellings.
    #[test]
    fn pairing_is_permutation_equivariant(
        class in arb_class(7),
        curve_index in 0usize..350,
        perm in arb_permutation(7),
    ) {
        let curves = all_fcurves(7).unwrap();
        let curve = &curves[curve_index % curves.len()];
        let base = pair_fcurve(curve, &class).unwrap();
        let moved = pair_fcurve(
            &curve.apply_permutation(&perm).unwrap(),
            &class.apply_permutation(&perm).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(moved, base);
    }

    /// Boundary canonicalization identifies a subset with its complement.
    #[test]
    fn boundary_complement_identification(mask in 0u8..=255) {
        // Interpret the mask over {1..7}; keep sizes in 2..=5.
        let elements: Vec<u8> = (1..=7u8).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        prop_assume!(elements.len() >= 2 && elements.len() <= 5);
        let complement: Vec<u8> =
            (1..=7u8).filter(|i| !elements.contains(i)).collect();
        let direct = canonical_boundary(7, elements).unwrap();
        let folded = canonical_boundary(7, complement).unwrap();
        prop_assert_eq!(direct, folded);
    }

    /// On a constructed-feasible system the solver always returns a valid
    /// nonnegative solution (not necessarily the one used to build it).
    #[test]
    fn solver_solutions_satisfy_their_systems(
        entries in prop::collection::vec(-4i64..=4, 12),
        witness in prop::collection::vec(0i64..=3, 4),
    ) {
        let columns: Vec<Vec<Q>> = entries
            .chunks(3)
            .map(|chunk| chunk.iter().map(|&v| qq(v, 1)).collect())
            .collect();
        let rhs: Vec<Q> = (0..3)
            .map(|row| {
                columns
                    .iter()
                    .zip(&witness)
                    .map(|(col, &w)| &col[row] * qq(w, 1))
                    .sum()
            })
            .collect();
        let solution = feasible_point(&columns, &rhs).expect("constructed feasible");
        for (row, target) in rhs.iter().enumerate() {
            let total: Q = columns.iter().zip(&solution).map(|(col, x)| &col[row] * x).sum();
            prop_assert_eq!(&total, target);
        }
        for x in &solution {
            prop_assert!(x >= &Q::from_integer(0.into()));
        }
    }
}
