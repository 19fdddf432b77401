//! The golden self-check suite: every frozen number the toolkit reproduces,
//! re-derived and compared in one deterministic pass.
//!
//! Checks are pure functions of the library (plus an explicit seed for the
//! sampled property checks), so two runs with the same seed produce
//! identical reports.  Results come back sorted by check id.

use std::fmt::Write as _;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::boundary::{all_boundary_classes, BoundaryIndex};
use crate::cert::{
    base_locus_report, builtin_certificates, find_certificate, verify_certificate, SearchOutcome,
};
use crate::chamber::{chamber_lookup, ChamberId, StableBaseLocus};
use crate::divisor::DivisorClass;
use crate::fcurve::{all_fcurves, fcurve_types, pair_fcurve};
use crate::graphs::{
    enumerate_strata, hassett_reduce, veronese_reduce, MarkedTree, WeightData,
};
use crate::rational::{q, qq, Q};
use crate::relations::{class_equal, keel_relations, relation_basis};
use crate::symmetric::{canonical_and_psi, nef_check, intersection_table, SymmetricDivisor};

/// One named golden check with its outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    /// Stable identifier; reports are sorted by it.
    pub id: &'static str,
    /// Human-readable summary of what is checked.
    pub name: &'static str,
    /// Whether the check passed.
    pub passed: bool,
    /// What was found (or how it failed).
    pub details: String,
}

impl Check {
    /// JSON rendering of the check.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
        })
    }
}

type Outcome = std::result::Result<String, String>;

fn run(id: &'static str, name: &'static str, body: impl FnOnce() -> Outcome) -> Check {
    match body() {
        Ok(details) => Check {
            id,
            name,
            passed: true,
            details,
        },
        Err(details) => Check {
            id,
            name,
            passed: false,
            details,
        },
    }
}

fn fail<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

fn expect<T: PartialEq + std::fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

/// Runs the whole suite.  `seed` drives the sampled property checks; the
/// frozen numeric checks ignore it.
pub fn run_all_checks(seed: u64) -> Vec<Check> {
    let mut checks = vec![
        run("01-boundary-counts", "boundary class counts follow 2^(n-1) - n - 1", || {
            for (n, want) in [(4, 3), (5, 10), (6, 25), (7, 56), (8, 119)] {
                let got = all_boundary_classes(n).map_err(fail)?.len();
                expect(&format!("count at n={n}"), got, want)?;
                let formula = (1usize << (n - 1)) - usize::from(n) - 1;
                expect(&format!("closed form at n={n}"), formula, want)?;
            }
            Ok("counts 3/10/25/56/119 for n = 4..8".into())
        }),
        run("02-canonical-representatives", "boundary classes normalise to the small side", || {
            let folded = BoundaryIndex::new(7, [3, 4, 5, 6, 7]).map_err(fail)?;
            expect("complement fold", folded.to_string(), "B{1,2}".to_owned())?;
            let half = BoundaryIndex::new(8, [2, 3, 4, 5]).map_err(fail)?;
            expect("half split containing 1", half.to_string(), "B{1,6,7,8}".to_owned())?;
            let classes = all_boundary_classes(6).map_err(fail)?;
            expect("first class", classes[0].to_string(), "B{1,2}".to_owned())?;
            let sizes: Vec<u8> = classes.iter().map(BoundaryIndex::size).collect();
            let mut sorted = sizes.clone();
            sorted.sort_unstable();
            expect("size-sorted order", sizes.clone(), sorted)?;
            Ok("complement folding and (size, lex) order hold".into())
        }),
        run("03-relation-ranks", "Keel relation ranks and quotient dimensions", || {
            for (n, rank, dim) in [(4, 2, 1), (5, 5, 5), (6, 9, 16), (7, 14, 42)] {
                let basis = relation_basis(n).map_err(fail)?;
                expect(&format!("rank at n={n}"), basis.rank(), rank)?;
                expect(&format!("quotient dim at n={n}"), basis.quotient_dim(), dim)?;
            }
            Ok("ranks 2/5/9/14, quotient dims 1/5/16/42 for n = 4..7".into())
        }),
        run("04-fcurve-census", "F-curve counts and numerical types", || {
            for (n, want) in [(4, 1), (5, 10), (6, 65), (7, 350)] {
                expect(
                    &format!("curves at n={n}"),
                    all_fcurves(n).map_err(fail)?.len(),
                    want,
                )?;
            }
            let types = fcurve_types(7).map_err(fail)?;
            expect(
                "types at n=7",
                types,
                vec![[1, 1, 1, 4], [1, 1, 2, 3], [1, 2, 2, 2]],
            )?;
            Ok("1/10/65/350 curves; three numerical types at n = 7".into())
        }),
        run("05-symmetric-identities", "boundary expressions for K, psi, B2, B3 at n = 7", || {
            let (k_sym, psi_sym) = canonical_and_psi(7).map_err(fail)?;
            let k = k_sym.expand();
            let psi = psi_sym.expand();
            let b2 = symmetric(1, 0)?.expand();
            let b3 = symmetric(0, 1)?.expand();
            let identities: [(&str, DivisorClass, DivisorClass); 4] = [
                ("K = -(1/3) B2", k.clone(), b2.scaled(&qq(-1, 3))),
                (
                    "psi = (5/3) B2 + 2 B3",
                    psi.clone(),
                    b2.scaled(&qq(5, 3)).checked_add(&b3.scaled(&q(2))).map_err(fail)?,
                ),
                ("B2 = -3 K", b2.clone(), k.scaled(&q(-3))),
                (
                    "B3 = (5/2) K + (1/2) psi",
                    b3,
                    k.scaled(&qq(5, 2)).checked_add(&psi.scaled(&qq(1, 2))).map_err(fail)?,
                ),
            ];
            for (label, lhs, rhs) in identities {
                if !class_equal(&lhs, &rhs).map_err(fail)? {
                    return Err(format!("{label}: normal forms differ"));
                }
                for curve in all_fcurves(7).map_err(fail)? {
                    let l = pair_fcurve(&curve, &lhs).map_err(fail)?;
                    let r = pair_fcurve(&curve, &rhs).map_err(fail)?;
                    if l != r {
                        return Err(format!("{label}: pairing differs on {curve}"));
                    }
                }
            }
            Ok("four identities hold via normal forms and all 350 pairings".into())
        }),
        run("06-intersection-table", "the 7 x 4 curve/divisor table at n = 7", || {
            let table = intersection_table(7).map_err(fail)?;
            let frozen: [(&str, [i64; 4]); 7] = [
                ("F_{1,1,1,4}", [3, -1, 3, -1]),
                ("F_{1,1,2,3}", [2, 0, 0, 1]),
                ("F_{1,2,2,2}", [1, 1, -3, 3]),
                ("C4", [4, 0, 0, 2]),
                ("C5", [5, 1, -3, 5]),
                ("C6", [10, -2, 6, 0]),
                ("A", [3, 1, -3, 4]),
            ];
            expect("row count", table.rows.len(), frozen.len())?;
            for (i, (label, values)) in frozen.iter().enumerate() {
                expect(&format!("row {i} label"), table.rows[i].label.as_str(), *label)?;
                let want: Vec<Q> = values.iter().map(|&v| q(v)).collect();
                expect(&format!("row {label}"), table.rows[i].values.to_vec(), want)?;
            }
            // The stored A-row data is (B2, B3) = (-3, 4); its psi and K
            // entries come from the boundary expressions and must close up.
            expect("A against psi", q(3), qq(5, 3) * q(-3) + q(2) * q(4))?;
            expect("A against K", q(1), qq(-1, 3) * q(-3))?;
            Ok("all 24 computed entries and the stored A-row agree".into())
        }),
        run("07-pairing-matrix-ranks", "F-curve pairing achieves the quotient dimension", || {
            for (n, want) in [(5, 5), (6, 16), (7, 42)] {
                let classes = all_boundary_classes(n).map_err(fail)?;
                let rows: Vec<Vec<Q>> = all_fcurves(n)
                    .map_err(fail)?
                    .iter()
                    .map(|curve| {
                        classes
                            .iter()
                            .map(|idx| {
                                pair_fcurve(curve, &DivisorClass::boundary(*idx)).map_err(fail)
                            })
                            .collect()
                    })
                    .collect::<std::result::Result<_, _>>()?;
                expect(&format!("rank at n={n}"), crate::relations::matrix_rank(rows), want)?;
            }
            Ok("pairing ranks 5/16/42 match the quotient dimensions".into())
        }),
        run("08-nef-cone", "nefness on a 10 x 10 grid matches the two-ray cone", || {
            let mut nef_points = 0usize;
            for i in 0..10i64 {
                for j in 0..10i64 {
                    let divisor =
                        SymmetricDivisor::new(7, vec![q(i), q(j)]).map_err(fail)?;
                    let got = nef_check(&divisor).map_err(fail)?;
                    let want = i <= j && j <= 3 * i;
                    if got != want {
                        return Err(format!("({i}, {j}): nef_check = {got}, cone says {want}"));
                    }
                    if got {
                        nef_points += 1;
                    }
                }
            }
            Ok(format!("{nef_points} of 100 grid points nef, all as predicted"))
        }),
        run("09-chamber-probes", "nine probes hit their chambers, models, and loci", || {
            use ChamberId::*;
            use StableBaseLocus as L;
            let probes: [(Q, Q, ChamberId, &str, L, bool); 9] = [
                (qq(5, 3), q(2), AmpleInterior, "M̄₀,₇", L::Empty, false),
                (q(1), q(4), HassettRange, "M̄₀,A", L::B3, false),
                (q(1), q(1), VeroneseRay, "V_A³", L::Empty, true),
                (q(7), q(6), FirstFlipChamber, "M̄₀,₇³", L::B2Triple, false),
                (q(3), q(2), SecondFlipChamber, "M̄₀,₇²", L::B2Double, false),
                (q(2), q(1), DivisorialRange, "M̄₀,₇¹", L::B2, false),
                (q(1), q(3), HassettRange, "M̄₀,A", L::Empty, true),
                (q(4), q(3), SmallContractionRay, "small contraction of M̄₀,₇³", L::B2Triple, true),
                (q(5), q(3), DivisorialRange, "M̄₀,₇¹", L::B2Double, true),
            ];
            for (a, b, id, model, locus, on_wall) in probes {
                let divisor =
                    SymmetricDivisor::new(7, vec![a.clone(), b.clone()]).map_err(fail)?;
                let report = chamber_lookup(&divisor).map_err(fail)?;
                let at = format!("({}, {})", crate::rational::format_q(&a), crate::rational::format_q(&b));
                expect(&format!("chamber at {at}"), report.chamber_id, id)?;
                expect(&format!("model at {at}"), report.model_label.as_str(), model)?;
                expect(&format!("locus at {at}"), report.stable_base_locus, locus)?;
                expect(&format!("wall flag at {at}"), report.on_wall, on_wall)?;
                if on_wall {
                    expect(&format!("adjacency count at {at} >= 2"), report.adjacent_models.len() >= 2, true)?;
                }
            }
            Ok("six chamber interiors and three walls classified as frozen".into())
        }),
        run("10-base-locus-report", "the five-range base-locus sweep is witnessed", || {
            let entries = base_locus_report(7).map_err(fail)?;
            let loci: Vec<StableBaseLocus> = entries.iter().map(|e| e.locus).collect();
            expect(
                "locus sweep",
                loci,
                vec![
                    StableBaseLocus::B2,
                    StableBaseLocus::B2Double,
                    StableBaseLocus::B2Triple,
                    StableBaseLocus::Empty,
                    StableBaseLocus::B3,
                ],
            )?;
            let mut exclusions = 0usize;
            for entry in &entries {
                for witness in &entry.inclusion {
                    if witness.pairing >= Q::zero() {
                        return Err(format!(
                            "{}: witness {} pairs nonnegatively",
                            entry.range_label, witness.curve
                        ));
                    }
                }
                for witness in &entry.exclusion {
                    let report =
                        verify_certificate(&witness.problem, &witness.certificate).map_err(fail)?;
                    if !report.verdict {
                        return Err(format!("{}: exclusion certificate fails", entry.range_label));
                    }
                    exclusions += 1;
                }
            }
            expect("exclusion certificates", exclusions, 3)?;
            Ok("five ranges, negative inclusion pairings, three verified exclusions".into())
        }),
        run("11-reference-certificates", "the three reference certificates verify", || {
            let builtins = builtin_certificates().map_err(fail)?;
            expect("builtin count", builtins.len(), 3)?;
            let mut sizes = Vec::new();
            for (i, (problem, certificate)) in builtins.iter().enumerate() {
                let report = verify_certificate(problem, certificate).map_err(fail)?;
                if !report.verdict {
                    return Err(format!(
                        "builtin {}: support_ok={} nonnegative={} class_matches={} ({} failing curves)",
                        i + 1,
                        report.support_ok,
                        report.nonnegative,
                        report.class_matches,
                        report.failing_fcurves.len()
                    ));
                }
                sizes.push(certificate.coeffs.len());
            }
            expect("support sizes", sizes, vec![35, 35, 29])?;
            Ok("all three reference certificates verify; supports 35/35/29 of 56".into())
        }),
        run("12-certificate-rediscovery", "search rediscovers all three reference problems", || {
            for (i, (problem, _)) in builtin_certificates().map_err(fail)?.into_iter().enumerate() {
                match find_certificate(&problem).map_err(fail)? {
                    SearchOutcome::Feasible(found) => {
                        let report = verify_certificate(&problem, &found).map_err(fail)?;
                        if !report.verdict {
                            return Err(format!("problem {}: rediscovered certificate fails", i + 1));
                        }
                    }
                    SearchOutcome::Infeasible { reason } => {
                        return Err(format!("problem {}: unexpectedly infeasible: {reason}", i + 1));
                    }
                }
            }
            Ok("three independent certificates found and verified".into())
        }),
        run("13-rigidity", "B2 and B3 are rigid without their own components", || {
            for (target, forbid) in [("B2", vec![1u8, 2]), ("B3", vec![1, 2, 3])] {
                let problem = crate::cert::CertificateProblem::new(
                    7,
                    crate::parse::parse_divisor(7, target).map_err(fail)?,
                    [BoundaryIndex::new(7, forbid.iter().copied()).map_err(fail)?],
                )
                .map_err(fail)?;
                match find_certificate(&problem).map_err(fail)? {
                    SearchOutcome::Infeasible { .. } => {}
                    SearchOutcome::Feasible(_) => {
                        return Err(format!("{target} unexpectedly rewritable"));
                    }
                }
            }
            Ok("both rigidity searches come back infeasible".into())
        }),
        run("14-strata-counts", "self-intersection strata counts match the closed form", || {
            expect("strata(7,3)", enumerate_strata(7, 3).map_err(fail)?.len(), 105)?;
            expect("strata(7,4)", enumerate_strata(7, 4).map_err(fail)?.len(), 0)?;
            for n in 4..=10u8 {
                for depth in 1..=(n / 2) {
                    let got = enumerate_strata(n, depth).map_err(fail)?.len();
                    let want = strata_closed_form(n, depth);
                    expect(&format!("strata({n},{depth})"), got, want)?;
                }
            }
            Ok("enumerations match n!/(2^i i! (n-2i)!) for all n <= 10".into())
        }),
        run("15-reduction-examples", "the three reference reductions come out right", || {
            reduction_examples()
        }),
        run("16-relations-pair-to-zero", "Keel relations are orthogonal to every F-curve", || {
            for n in [5u8, 6, 7] {
                let relations = keel_relations(n).map_err(fail)?;
                let curves = all_fcurves(n).map_err(fail)?;
                for relation in &relations {
                    for curve in &curves {
                        let value = pair_fcurve(curve, relation).map_err(fail)?;
                        if !value.is_zero() {
                            return Err(format!(
                                "n={n}: relation pairs to {} on {curve}",
                                crate::rational::format_q(&value)
                            ));
                        }
                    }
                }
            }
            Ok("every relation pairs to zero against every F-curve for n = 5, 6, 7".into())
        }),
    ];
    checks.push(run(
        "17-normal-form-properties",
        "normal forms are idempotent and linear on sampled classes",
        || {
            let mut rng = StdRng::seed_from_u64(seed);
            let classes = all_boundary_classes(7).map_err(fail)?;
            for round in 0..12 {
                let a = random_boundary_class(&mut rng, &classes)?;
                let b = random_boundary_class(&mut rng, &classes)?;
                let nf_a = crate::relations::normal_form(&a).map_err(fail)?;
                if crate::relations::normal_form(&nf_a).map_err(fail)? != nf_a {
                    return Err(format!("round {round}: normal form is not idempotent"));
                }
                if !class_equal(&a, &nf_a).map_err(fail)? {
                    return Err(format!("round {round}: normal form changes the class"));
                }
                let sum = a.checked_add(&b).map_err(fail)?;
                let nf_sum = crate::relations::normal_form(&sum).map_err(fail)?;
                let nf_b = crate::relations::normal_form(&b).map_err(fail)?;
                let relinearised = crate::relations::normal_form(
                    &nf_a.checked_add(&nf_b).map_err(fail)?,
                )
                .map_err(fail)?;
                if nf_sum != relinearised {
                    return Err(format!("round {round}: normal form is not linear"));
                }
            }
            Ok("12 sampled rounds: idempotent, class-preserving, linear".into())
        },
    ));
    checks.push(run(
        "18-grammar-round-trips",
        "printed divisors re-parse to the same class",
        || {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(1));
            let classes = all_boundary_classes(7).map_err(fail)?;
            for round in 0..12 {
                let mut class = random_boundary_class(&mut rng, &classes)?;
                if rng.random_bool(0.5) {
                    let i = rng.random_range(1..=7u8);
                    class
                        .add_psi_term(i, qq(rng.random_range(-6..=6), 2))
                        .map_err(fail)?;
                }
                let printed = class.to_string();
                let reparsed = crate::parse::parse_divisor(7, &printed).map_err(fail)?;
                if reparsed != class {
                    return Err(format!("round {round}: {printed:?} re-parses differently"));
                }
            }
            for text in ["psi - 4*K", "5*B2 + 3*B3", "B{3,4,5,6,7} - 1/2*psi_3", "0"] {
                let class = crate::parse::parse_divisor(7, text).map_err(fail)?;
                let reparsed =
                    crate::parse::parse_divisor(7, &class.to_string()).map_err(fail)?;
                if reparsed != class {
                    return Err(format!("{text:?} does not round-trip"));
                }
            }
            Ok("12 sampled and 4 fixed expressions round-trip".into())
        },
    ));
    checks.push(run(
        "19-relabelling-equivariance",
        "certificate verification is stable under relabelling",
        || {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(2));
            let (problem, certificate) = builtin_certificates().map_err(fail)?.swap_remove(0);
            for round in 0..5 {
                let perm = random_permutation(&mut rng, 7);
                let moved_problem = problem.apply_permutation(&perm).map_err(fail)?;
                let moved_certificate = certificate.apply_permutation(&perm).map_err(fail)?;
                let report =
                    verify_certificate(&moved_problem, &moved_certificate).map_err(fail)?;
                if !report.verdict {
                    return Err(format!("round {round}: relabelled certificate fails ({perm:?})"));
                }
            }
            Ok("5 sampled relabellings keep the verdict".into())
        },
    ));
    checks.sort_by_key(|c| c.id);
    checks
}

/// A symmetric divisor `a·B₂ + b·B₃` on M̄₀,₇.
fn symmetric(a: i64, b: i64) -> std::result::Result<SymmetricDivisor, String> {
    SymmetricDivisor::new(7, vec![q(a), q(b)]).map_err(fail)
}

fn strata_closed_form(n: u8, depth: u8) -> usize {
    // n! / (2^i · i! · (n−2i)!)
    let factorial = |k: u8| -> u128 { (1..=u128::from(k)).product::<u128>().max(1) };
    let numerator = factorial(n);
    let denominator =
        (1u128 << depth) * factorial(depth) * factorial(n - 2 * depth);
    usize::try_from(numerator / denominator).expect("small count")
}

fn random_boundary_class(
    rng: &mut StdRng,
    classes: &[BoundaryIndex],
) -> std::result::Result<DivisorClass, String> {
    let mut class = DivisorClass::zero(7).map_err(fail)?;
    for _ in 0..rng.random_range(2..=6) {
        let idx = classes[rng.random_range(0..classes.len())];
        let coeff = qq(rng.random_range(-9..=9), rng.random_range(1..=3));
        class.add_boundary_term(idx, coeff).map_err(fail)?;
    }
    Ok(class)
}

fn random_permutation(rng: &mut StdRng, n: u8) -> Vec<u8> {
    let mut perm: Vec<u8> = (1..=n).collect();
    for i in (1..perm.len()).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

fn reduction_examples() -> Outcome {
    // Two components, markings 1,2,3 | 4,5,6,7, weights 1/7 each of 1/3:
    // the light side collapses to a multiplicity-3 point.
    let two_sided = MarkedTree::new(
        ["v1".into(), "v2".into()],
        [("v1".into(), "v2".into())],
        (1..=7u32).map(|i| (i, if i <= 3 { "v1".into() } else { "v2".into() }, 1)),
    )
    .map_err(fail)?;
    let thirds = WeightData::hassett(vec![qq(1, 3); 7]).map_err(fail)?;
    let report = hassett_reduce(&two_sided, &thirds).map_err(fail)?;
    expect("surviving vertices", report.result.vertices().count(), 1)?;
    expect(
        "merged legs",
        report.result.legs_at("v2"),
        vec![(1, 3), (4, 1), (5, 1), (6, 1), (7, 1)],
    )?;

    let cubic = WeightData::veronese(vec![qq(4, 7); 7], Q::zero(), 3).map_err(fail)?;

    // Chain 2–1–4: the middle component has sigma 0 and contracts to a node.
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
    .map_err(fail)?;
    let report = veronese_reduce(&chain, &cubic).map_err(fail)?;
    expect("chain sigma", report.sigma_values.values().cloned().collect::<Vec<_>>(), vec![1, 0, 2])?;
    expect("chain survivors", report.result.vertices().count(), 2)?;
    expect(
        "chain edge",
        report.result.edges().contains(&("v1".to_owned(), "v3".to_owned())),
        true,
    )?;

    // Comb: three 2-marked tails around a 1-marked spine; the spine
    // collapses to a 3-fold point and its marking moves to the hub.
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
    .map_err(fail)?;
    let report = veronese_reduce(&comb, &cubic).map_err(fail)?;
    let sigma: Vec<i64> = report.sigma_values.values().cloned().collect();
    expect("comb sigma (s, t1, t2, t3)", sigma, vec![0, 1, 1, 1])?;
    expect("comb contraction count", report.contracted.len(), 1)?;
    expect(
        "comb reason mentions the triple point",
        report.contracted[0].reason.contains("spine with 3 attachments"),
        true,
    )?;
    expect("hub markings", report.result.legs_at("t1"), vec![(1, 1), (2, 1), (7, 1)])?;

    // A single already-stable vertex is a fixed point of both reductions.
    let lone = MarkedTree::new(
        ["v".into()],
        [],
        (1..=7u32).map(|i| (i, "v".into(), 1)),
    )
    .map_err(fail)?;
    let hassett_lone = hassett_reduce(&lone, &thirds).map_err(fail)?;
    expect("single-vertex hassett identity", hassett_lone.result == lone, true)?;
    let veronese_lone = veronese_reduce(&lone, &cubic).map_err(fail)?;
    expect("single-vertex veronese identity", veronese_lone.result == lone, true)?;

    Ok("collision, chain node, triple point, and identity reductions all match".into())
}

/// Renders the suite as aligned text, one line per check.
pub fn render_text(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for check in checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{status}  {id:width$}  {details}",
            id = check.id,
            details = check.details,
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    );
    out
}
