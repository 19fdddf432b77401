//! Certificate search and verification under stress: relabelling symmetry,
//! determinism, serialization, and the negative searches that pin down the
//! base-locus boundaries.

use std::time::Instant;

use m0n_core::parse::{parse_divisor, parse_forbidden_list};
use m0n_core::rational::q;
use m0n_core::{
    builtin_certificates, canonical_boundary, find_certificate, verify_certificate, Certificate,
    CertificateProblem, SearchOutcome,
};

fn feasible(problem: &CertificateProblem) -> Certificate {
    match find_certificate(problem).unwrap() {
        SearchOutcome::Feasible(certificate) => certificate,
        SearchOutcome::Infeasible { reason } => panic!("expected feasible, got: {reason}"),
    }
}

/// The whole certificate story is S₇-equivariant: relabelling a problem and
/// its certificate by the same permutation preserves the verdict, and the
/// search stays feasible on the relabelled problem.
#[test]
fn relabelling_preserves_verdicts_and_feasibility() {
    // Deterministic LCG so the permutation sample is reproducible.
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move |bound: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize % bound
    };
    let builtins = builtin_certificates().unwrap();
    for round in 0..20 {
        let (problem, certificate) = &builtins[round % builtins.len()];
        let mut perm: Vec<u8> = (1..=7).collect();
        for i in (1..7).rev() {
            perm.swap(i, next(i + 1));
        }
        let moved_problem = problem.apply_permutation(&perm).unwrap();
        let moved_certificate = certificate.apply_permutation(&perm).unwrap();
        let report = verify_certificate(&moved_problem, &moved_certificate).unwrap();
        assert!(report.verdict, "round {round}, perm {perm:?}");
        let rediscovered = feasible(&moved_problem);
        assert!(
            verify_certificate(&moved_problem, &rediscovered).unwrap().verdict,
            "round {round}, perm {perm:?}"
        );
    }
}

/// Identical problems give byte-identical certificates across repeated
/// searches — the solver has no hidden state.
#[test]
fn search_is_deterministic() {
    let (problem, _) = builtin_certificates().unwrap().swap_remove(2);
    let first = feasible(&problem);
    for _ in 0..3 {
        assert_eq!(feasible(&problem), first);
    }
}

/// Problems and certificates survive the JSON round trip, and the parsed
/// forms plug straight back into verification.
#[test]
fn json_round_trips_compose_with_verification() {
    for (problem, certificate) in builtin_certificates().unwrap() {
        let problem_json = problem.to_json();
        let certificate_json = certificate.to_json();
        let problem_back = CertificateProblem::from_json(&problem_json).unwrap();
        let certificate_back = Certificate::from_json(7, &certificate_json).unwrap();
        assert_eq!(problem_back, problem);
        assert_eq!(certificate_back, certificate);
        assert!(verify_certificate(&problem_back, &certificate_back).unwrap().verdict);
    }
}

/// Forbidding a component of the class itself must come back infeasible:
/// B₂ and B₃ admit no effective expression avoiding one of their own
/// components, at any multiple.
#[test]
fn rigid_divisors_stay_infeasible_at_every_multiple() {
    for (target, forbidden) in [("B2", "B{1,2}"), ("B3", "B{1,2,3}")] {
        let problem = CertificateProblem::new(
            7,
            parse_divisor(7, target).unwrap(),
            parse_forbidden_list(7, forbidden).unwrap(),
        )
        .unwrap();
        match find_certificate(&problem).unwrap() {
            SearchOutcome::Infeasible { reason } => {
                assert!(!reason.is_empty(), "{target}");
            }
            SearchOutcome::Feasible(certificate) => {
                panic!("{target} unexpectedly expressed: {certificate:?}")
            }
        }
    }
}

/// A certificate whose class matches but whose support strays into the
/// forbidden set is rejected on the support flag alone.
#[test]
fn forbidden_support_fails_verification_without_poisoning_the_class_check() {
    let (problem, certificate) = builtin_certificates().unwrap().swap_remove(0);
    let report = verify_certificate(&problem, &certificate).unwrap();
    assert!(report.verdict);

    // Grow the problem's forbidden set until it hits the certificate.
    let mut widened = problem.clone();
    let touched = *certificate.coeffs.keys().next().unwrap();
    widened.forbidden.insert(touched);
    let report = verify_certificate(&widened, &certificate).unwrap();
    assert!(!report.support_ok);
    assert!(report.nonnegative);
    assert!(report.class_matches);
    assert!(!report.verdict);
}

/// The search respects the forbidden set it is given, not just the builtin
/// ones.  Forbidding a third, overlapping class still leaves the expression
/// findable; forbidding two disjoint 2-element classes at once does not, and
/// the search reports that honestly instead of bending the support rule.
#[test]
fn fresh_problems_solve_within_budget() {
    let target = parse_divisor(7, "5*B2 + 3*B3").unwrap();
    let forbidden = parse_forbidden_list(7, "B{1,2}, B{3,4,5}, B{1,3,6}").unwrap();
    let problem = CertificateProblem::new(7, target, forbidden).unwrap();
    let start = Instant::now();
    let certificate = feasible(&problem);
    assert!(start.elapsed().as_secs() < 60);
    let report = verify_certificate(&problem, &certificate).unwrap();
    assert!(report.verdict);
    for idx in &problem.forbidden {
        assert!(!certificate.coeffs.contains_key(idx));
    }
    assert!(!certificate.coeffs.contains_key(&canonical_boundary(7, [1, 3, 6]).unwrap()));

    let target = parse_divisor(7, "5*B2 + 3*B3").unwrap();
    let forbidden = parse_forbidden_list(7, "B{1,2}, B{3,4,5}, B{1,6}, B{2,7}").unwrap();
    let blocked = CertificateProblem::new(7, target, forbidden).unwrap();
    match find_certificate(&blocked).unwrap() {
        SearchOutcome::Infeasible { reason } => {
            assert!(reason.contains("every multiple"), "{reason}")
        }
        SearchOutcome::Feasible(_) => panic!("two disjoint forbidden pairs should block this"),
    }
}

/// Tampering with one coefficient of a valid certificate is always caught,
/// by the class check and by at least one failing curve.
#[test]
fn single_coefficient_tampering_is_caught_with_witness_curves() {
    let (problem, mut certificate) = builtin_certificates().unwrap().swap_remove(1);
    let key = *certificate.coeffs.keys().nth(3).unwrap();
    if let Some(coeff) = certificate.coeffs.get_mut(&key) {
        *coeff += q(1);
    }
    let report = verify_certificate(&problem, &certificate).unwrap();
    assert!(!report.class_matches);
    assert!(!report.failing_fcurves.is_empty());
    assert!(!report.verdict);
    for failing in &report.failing_fcurves {
        assert_ne!(failing.certificate_value, failing.target_value);
    }
}
