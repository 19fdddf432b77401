//! The acceptance gate: one test per release criterion.  Each test is a
//! single pass/fail line in the harness output; together they define what
//! "the toolkit reproduces the calculus" means.

use std::collections::BTreeSet;
use std::time::Instant;

use m0n_core::graphs::{hassett_reduce, sigma, veronese_reduce, MarkedTree, WeightData};
use m0n_core::parse::parse_divisor;
use m0n_core::rational::{q, qq, Q};
use m0n_core::{
    all_boundary_classes, all_fcurves, builtin_certificates, canonical_and_psi, chamber_lookup,
    class_equal, enumerate_strata, find_certificate, intersection_table, keel_relations,
    matrix_rank, nef_check, pair_curve, pair_fcurve, relation_basis, verify_certificate,
    ChamberId, CurveClass, DivisorClass, SearchOutcome, StableBaseLocus, SymmetricDivisor,
};

/// Criterion 1 — the full symmetric intersection table: all 24 computed
/// entries match the frozen values, and the stored transversal row stays
/// consistent with the boundary expressions for ψ and K.
#[test]
fn criterion_01_intersection_table() {
    let table = intersection_table(7).unwrap();
    let frozen: [(&str, [i64; 4]); 7] = [
        ("F_{1,1,1,4}", [3, -1, 3, -1]),
        ("F_{1,1,2,3}", [2, 0, 0, 1]),
        ("F_{1,2,2,2}", [1, 1, -3, 3]),
        ("C4", [4, 0, 0, 2]),
        ("C5", [5, 1, -3, 5]),
        ("C6", [10, -2, 6, 0]),
        ("A", [3, 1, -3, 4]),
    ];
    assert_eq!(table.rows.len(), 7);
    for (label, values) in frozen {
        let row = table.row(label).unwrap();
        let expected: Vec<Q> = values.iter().map(|&v| q(v)).collect();
        assert_eq!(row.values.to_vec(), expected, "{label}");
    }
    // Recompute the 24 computable entries from curve classes directly.
    let divisors = [
        SymmetricDivisor::from_class(&parse_divisor(7, "psi").unwrap()).unwrap(),
        SymmetricDivisor::from_class(&parse_divisor(7, "K").unwrap()).unwrap(),
        SymmetricDivisor::new(7, vec![q(1), q(0)]).unwrap(),
        SymmetricDivisor::new(7, vec![q(0), q(1)]).unwrap(),
    ];
    let computable: [(&str, CurveClass); 6] = [
        ("F_{1,1,1,4}", CurveClass::fcurve_type(7, [1, 1, 1, 4]).unwrap()),
        ("F_{1,1,2,3}", CurveClass::fcurve_type(7, [1, 1, 2, 3]).unwrap()),
        ("F_{1,2,2,2}", CurveClass::fcurve_type(7, [1, 2, 2, 2]).unwrap()),
        ("C4", CurveClass::sweeping(7, 4).unwrap()),
        ("C5", CurveClass::sweeping(7, 5).unwrap()),
        ("C6", CurveClass::sweeping(7, 6).unwrap()),
    ];
    for (label, class) in computable {
        let row = table.row(label).unwrap();
        for (col, divisor) in divisors.iter().enumerate() {
            assert_eq!(pair_curve(&class, divisor).unwrap(), row.values[col], "{label}");
        }
    }
    // The stored row's ψ and K entries follow from its (B₂, B₃) entries.
    let a = table.row("A").unwrap();
    assert_eq!(a.values[0], qq(5, 3) * &a.values[2] + q(2) * &a.values[3]);
    assert_eq!(a.values[1], qq(-1, 3) * &a.values[2]);
}

/// Criterion 2 — the four boundary-expression identities for K, ψ, B₂, B₃
/// hold along both proof routes: Keel normal forms and all 350 pairings.
#[test]
fn criterion_02_boundary_identities_two_routes() {
    let (k, psi) = canonical_and_psi(7).unwrap();
    let k = k.expand();
    let psi = psi.expand();
    let b2 = SymmetricDivisor::new(7, vec![q(1), q(0)]).unwrap().expand();
    let b3 = SymmetricDivisor::new(7, vec![q(0), q(1)]).unwrap().expand();
    let identities = [
        (k.clone(), b2.scaled(&qq(-1, 3))),
        (
            psi.clone(),
            b2.scaled(&qq(5, 3)).checked_add(&b3.scaled(&q(2))).unwrap(),
        ),
        (b2.clone(), k.scaled(&q(-3))),
        (
            b3,
            k.scaled(&qq(5, 2)).checked_add(&psi.scaled(&qq(1, 2))).unwrap(),
        ),
    ];
    let curves = all_fcurves(7).unwrap();
    for (lhs, rhs) in identities {
        assert!(class_equal(&lhs, &rhs).unwrap());
        for curve in &curves {
            assert_eq!(
                pair_fcurve(curve, &lhs).unwrap(),
                pair_fcurve(curve, &rhs).unwrap()
            );
        }
    }
}

/// Criterion 3 — quotient dimensions follow 2^(n−1) − C(n,2) − 1 for
/// n = 4..7, and the F-curve pairing matrix reaches the same rank.
#[test]
fn criterion_03_quotient_dimensions_and_pairing_ranks() {
    for (n, dim) in [(4u8, 1usize), (5, 5), (6, 16), (7, 42)] {
        let basis = relation_basis(n).unwrap();
        assert_eq!(basis.quotient_dim(), dim, "n = {n}");
        let formula = (1usize << (n - 1)) - usize::from(n) * usize::from(n - 1) / 2 - 1;
        assert_eq!(formula, dim, "n = {n}");
    }
    for (n, dim) in [(5u8, 5usize), (6, 16), (7, 42)] {
        let classes = all_boundary_classes(n).unwrap();
        let rows: Vec<Vec<Q>> = all_fcurves(n)
            .unwrap()
            .iter()
            .map(|curve| {
                classes
                    .iter()
                    .map(|&idx| pair_fcurve(curve, &DivisorClass::boundary(idx)).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(matrix_rank(rows), dim, "n = {n}");
    }
}

/// Criterion 4 — the three reference certificates verify as-is.
#[test]
fn criterion_04_reference_certificates_verify() {
    let builtins = builtin_certificates().unwrap();
    assert_eq!(builtins.len(), 3);
    for (i, (problem, certificate)) in builtins.iter().enumerate() {
        let report = verify_certificate(problem, certificate).unwrap();
        assert!(report.support_ok, "builtin {}", i + 1);
        assert!(report.nonnegative, "builtin {}", i + 1);
        assert!(report.class_matches, "builtin {}", i + 1);
        assert!(report.verdict, "builtin {}", i + 1);
    }
}

/// Criterion 5 — the search rediscovers a valid certificate for each
/// reference problem, each within its one-minute budget.
#[test]
fn criterion_05_search_rediscovers_within_budget() {
    for (i, (problem, _)) in builtin_certificates().unwrap().into_iter().enumerate() {
        let start = Instant::now();
        let outcome = find_certificate(&problem).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 60, "problem {} took {elapsed:?}", i + 1);
        match outcome {
            SearchOutcome::Feasible(certificate) => {
                assert!(
                    verify_certificate(&problem, &certificate).unwrap().verdict,
                    "problem {}",
                    i + 1
                );
            }
            SearchOutcome::Infeasible { reason } => {
                panic!("problem {} infeasible: {reason}", i + 1)
            }
        }
    }
}

/// Criterion 6 — nine probe rays (one inside each chamber of the symmetric
/// effective cone, plus the three interior walls) return the exact model
/// labels and stable base loci.
#[test]
fn criterion_06_chamber_probes() {
    use ChamberId::*;
    use StableBaseLocus as L;
    let probes: [(i64, i64, ChamberId, &str, L); 9] = [
        (5, 6, AmpleInterior, "M̄₀,₇", L::Empty),
        (1, 4, HassettRange, "M̄₀,A", L::B3),
        (1, 1, VeroneseRay, "V_A³", L::Empty),
        (7, 6, FirstFlipChamber, "M̄₀,₇³", L::B2Triple),
        (3, 2, SecondFlipChamber, "M̄₀,₇²", L::B2Double),
        (2, 1, DivisorialRange, "M̄₀,₇¹", L::B2),
        (1, 3, HassettRange, "M̄₀,A", L::Empty),
        (4, 3, SmallContractionRay, "small contraction of M̄₀,₇³", L::B2Triple),
        (5, 3, DivisorialRange, "M̄₀,₇¹", L::B2Double),
    ];
    for (a, b, id, model, locus) in probes {
        let divisor = SymmetricDivisor::new(7, vec![q(a), q(b)]).unwrap();
        let report = chamber_lookup(&divisor).unwrap();
        assert_eq!(report.chamber_id, id, "({a}, {b})");
        assert_eq!(report.model_label, model, "({a}, {b})");
        assert_eq!(report.stable_base_locus, locus, "({a}, {b})");
    }
}

/// Criterion 7 — nefness over the 10×10 coefficient grid is true exactly on
/// the closed cone i ≤ j ≤ 3i.
#[test]
fn criterion_07_nef_grid() {
    for i in 0..10i64 {
        for j in 0..10i64 {
            let divisor = SymmetricDivisor::new(7, vec![q(i), q(j)]).unwrap();
            assert_eq!(
                nef_check(&divisor).unwrap(),
                i <= j && j <= 3 * i,
                "({i}, {j})"
            );
        }
    }
}

/// Criterion 8 — self-intersection strata: the two seven-point counts, and
/// the closed form against direct enumeration for every n up to 10.
#[test]
fn criterion_08_strata_counts() {
    assert_eq!(enumerate_strata(7, 3).unwrap().len(), 105);
    assert_eq!(enumerate_strata(7, 4).unwrap().len(), 0);
    let factorial = |k: u128| (1..=k).product::<u128>().max(1);
    for n in 4u8..=10 {
        for depth in 1..=n / 2 {
            let expected = factorial(u128::from(n))
                / ((1u128 << depth) * factorial(u128::from(depth)) * factorial(u128::from(n - 2 * depth)));
            assert_eq!(
                enumerate_strata(n, depth).unwrap().len(),
                usize::try_from(expected).unwrap(),
                "({n}, {depth})"
            );
        }
    }
}

/// Criterion 9 — the reference reductions: the three-point collision under
/// weight 1/3, and both σ-reduction cases (node contraction in the chain;
/// the σ = (1,1,1,0) comb collapsing its spine to a triple point).
#[test]
fn criterion_09_reference_reductions() {
    let two_sided = MarkedTree::new(
        ["v1".into(), "v2".into()],
        [("v1".into(), "v2".into())],
        (1..=7u32).map(|i| (i, if i <= 3 { "v1".into() } else { "v2".into() }, 1)),
    )
    .unwrap();
    let thirds = WeightData::hassett(vec![qq(1, 3); 7]).unwrap();
    let report = hassett_reduce(&two_sided, &thirds).unwrap();
    assert_eq!(report.result.vertices().count(), 1);
    assert_eq!(
        report.result.legs_at("v2"),
        vec![(1, 3), (4, 1), (5, 1), (6, 1), (7, 1)]
    );

    let cubic = WeightData::veronese(vec![qq(4, 7); 7], q(0), 3).unwrap();
    let chain = MarkedTree::new(
        ["v1".into(), "v2".into(), "v3".into()],
        [("v1".into(), "v2".into()), ("v2".into(), "v3".into())],
        [
            (1, "v1".into(), 1),
            (2, "v1".into(), 1),
            (3, "v2".into(), 1),
            (4, "v3".into(), 1),
            (5, "v3".into(), 1),
            (6, "v3".into(), 1),
            (7, "v3".into(), 1),
        ],
    )
    .unwrap();
    let report = veronese_reduce(&chain, &cubic).unwrap();
    assert_eq!(report.sigma_values["v2"], 0);
    assert_eq!(report.result.vertices().count(), 2);
    assert_eq!(report.contracted.len(), 1);

    let comb = MarkedTree::new(
        ["s".into(), "t1".into(), "t2".into(), "t3".into()],
        [
            ("s".into(), "t1".into()),
            ("s".into(), "t2".into()),
            ("s".into(), "t3".into()),
        ],
        [
            (1, "t1".into(), 1),
            (2, "t1".into(), 1),
            (3, "t2".into(), 1),
            (4, "t2".into(), 1),
            (5, "t3".into(), 1),
            (6, "t3".into(), 1),
            (7, "s".into(), 1),
        ],
    )
    .unwrap();
    let report = veronese_reduce(&comb, &cubic).unwrap();
    for tail in ["t1", "t2", "t3"] {
        assert_eq!(report.sigma_values[tail], 1, "{tail}");
    }
    assert_eq!(report.sigma_values["s"], 0);
    assert_eq!(report.contracted.len(), 1);
    assert!(report.contracted[0].reason.contains("spine with 3 attachments"));
}

/// Criterion 10 — the property suites, compactly: relations pair to zero
/// against every F-curve; both reductions are idempotent and independent of
/// contraction order on every tree shape with at most six vertices; σ
/// telescoping is well defined on the same corpus; and σ sums to the degree
/// on the seven-point instances.
#[test]
fn criterion_10_property_suites() {
    // Relation orthogonality, exhaustively for n = 5, 6, 7.
    for n in [5u8, 6, 7] {
        let curves = all_fcurves(n).unwrap();
        for relation in keel_relations(n).unwrap() {
            for curve in &curves {
                assert!(pair_fcurve(curve, &relation).unwrap() == q(0), "n = {n}");
            }
        }
    }

    // The 14 tree shapes, minimally marked (seven points where that is
    // stable, the smallest stable count otherwise).
    let shapes: [(&str, usize, &[(usize, usize)]); 14] = [
        ("single", 1, &[]),
        ("pair", 2, &[(1, 2)]),
        ("path3", 3, &[(1, 2), (2, 3)]),
        ("path4", 4, &[(1, 2), (2, 3), (3, 4)]),
        ("star4", 4, &[(1, 2), (1, 3), (1, 4)]),
        ("path5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5)]),
        ("star5", 5, &[(1, 2), (1, 3), (1, 4), (1, 5)]),
        ("spider211", 5, &[(1, 2), (2, 3), (3, 4), (3, 5)]),
        ("path6", 6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]),
        ("star6", 6, &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]),
        ("spider311", 6, &[(1, 2), (2, 3), (3, 4), (4, 5), (4, 6)]),
        ("spider221", 6, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]),
        ("doublestar", 6, &[(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)]),
        ("spider2111", 6, &[(1, 2), (2, 3), (3, 4), (3, 5), (3, 6)]),
    ];
    for (shape, nv, edges) in shapes {
        let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        let mut legs: Vec<(u32, String, u32)> = Vec::new();
        let mut label = 1u32;
        for v in 1..=nv {
            for _ in 0..3usize.saturating_sub(degree(v)) {
                legs.push((label, format!("v{v}"), 1));
                label += 1;
            }
        }
        let minimum = legs.len();
        // Odd mark counts keep subset weights non-integral, where the peel
        // identity for σ is exact (the seven-point setting is the odd case
        // the calculus itself uses); the even-count boundary is documented
        // in the reduction test suite.
        let target = {
            let m = minimum.max(7);
            if m % 2 == 0 { m + 1 } else { m }
        };
        for extra in minimum..target {
            legs.push((extra as u32 + 1, format!("v{}", extra % nv + 1), 1));
        }
        let n = legs.len();
        let tree = MarkedTree::new(
            (1..=nv).map(|v| format!("v{v}")),
            edges.iter().map(|&(a, b)| (format!("v{a}"), format!("v{b}"))),
            legs.iter().cloned(),
        )
        .unwrap();

        let hassett = WeightData::hassett(vec![qq(1, 3); n]).unwrap();
        let veronese = WeightData::veronese(vec![qq(4, n as i64); n], q(0), 3).unwrap();

        // Idempotence.
        let once = hassett_reduce(&tree, &hassett).unwrap();
        let twice = hassett_reduce(&once.result, &hassett).unwrap();
        assert_eq!(twice.result, once.result, "{shape}");
        let once_v = veronese_reduce(&tree, &veronese).unwrap();
        let twice_v = veronese_reduce(&once_v.result, &veronese).unwrap();
        assert_eq!(twice_v.result, once_v.result, "{shape}");

        // Contraction-order independence via a name reversal.
        let flip = |v: usize| format!("v{}", nv + 1 - v);
        let reversed = MarkedTree::new(
            (1..=nv).map(flip),
            edges.iter().map(|&(a, b)| (flip(a), flip(b))),
            legs.iter().map(|(label, vtx, m)| {
                let i: usize = vtx[1..].parse().unwrap();
                (*label, flip(i), *m)
            }),
        )
        .unwrap();
        let mirrored = hassett_reduce(&reversed, &hassett).unwrap();
        let unflipped = MarkedTree::new(
            mirrored.result.vertices().map(|w| {
                let i: usize = w[1..].parse().unwrap();
                flip(i)
            }),
            mirrored.result.edges().iter().map(|(x, y)| {
                let xi: usize = x[1..].parse().unwrap();
                let yi: usize = y[1..].parse().unwrap();
                (flip(xi), flip(yi))
            }),
            mirrored.result.legs().iter().map(|(&label, leg)| {
                let i: usize = leg.vertex[1..].parse().unwrap();
                (label, flip(i), leg.multiplicity)
            }),
        )
        .unwrap();
        assert_eq!(unflipped, once.result, "{shape}");

        // σ telescoping well-definedness over every connected subset.
        let subsets: Vec<BTreeSet<String>> = (1u32..(1 << nv))
            .filter_map(|mask| {
                let members: Vec<usize> =
                    (0..nv).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                let mut seen = vec![members[0]];
                let mut frontier = vec![members[0]];
                while let Some(v) = frontier.pop() {
                    for &(a, b) in edges {
                        let w = if a == v { b } else if b == v { a } else { continue };
                        if members.contains(&w) && !seen.contains(&w) {
                            seen.push(w);
                            frontier.push(w);
                        }
                    }
                }
                (seen.len() == members.len())
                    .then(|| members.into_iter().map(|v| format!("v{v}")).collect())
            })
            .collect();
        for set in &subsets {
            let crossing = edges
                .iter()
                .filter(|&&(a, b)| {
                    set.contains(&format!("v{a}")) != set.contains(&format!("v{b}"))
                })
                .count();
            if crossing < 2 {
                continue;
            }
            let value = sigma(&tree, set, &veronese).unwrap();
            for piece in subsets.iter().filter(|piece| {
                piece.intersection(set).next().is_none()
                    && edges.iter().filter(|&&(a, b)| {
                        piece.contains(&format!("v{a}")) != piece.contains(&format!("v{b}"))
                    }).count() == 1
                    && edges.iter().any(|&(a, b)| {
                        (set.contains(&format!("v{a}")) && piece.contains(&format!("v{b}")))
                            || (set.contains(&format!("v{b}")) && piece.contains(&format!("v{a}")))
                    })
            }) {
                let union: BTreeSet<String> = set.union(piece).cloned().collect();
                if union.len() == set.len() + piece.len() {
                    let expected =
                        sigma(&tree, &union, &veronese).unwrap() - sigma(&tree, piece, &veronese).unwrap();
                    assert_eq!(value, expected, "{shape}: {set:?} via {piece:?}");
                }
            }
        }

        // Degree conservation on the seven-point instances.
        if n == 7 {
            let total: i64 = once_v.sigma_values.values().sum();
            assert_eq!(total, 3, "{shape}");
        }
    }
}
