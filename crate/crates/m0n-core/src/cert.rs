//! Effectivity certificates: nonnegative boundary expressions for divisor
//! classes, avoiding prescribed components.
//!
//! A certificate for a target class `D` is a nonnegative combination
//! `Σ c_I · B_I ≡ m·D` (in the relation quotient) whose support avoids a
//! forbidden set of boundary classes.  Such an expression witnesses that the
//! stable base locus of `D` misses the locus where the forbidden components
//! are the only effective summands available.  Search runs as an exact
//! phase-1 linear program over the quotient coordinates; verification
//! recomputes the class identity along two independent routes (normal forms
//! and pairing against every F-curve).

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::boundary::BoundaryIndex;
use crate::chamber::StableBaseLocus;
use crate::divisor::DivisorClass;
use crate::fcurve::{all_fcurves, pair_fcurve, FCurve};
use crate::rational::{format_q, Q};
use crate::relations::{class_equal, relation_basis};
use crate::simplex::feasible_point;
use crate::symmetric::{CurveClass, SymmetricDivisor};
use crate::{Error, Result};

/// Default bound on the multiple `m` explored by certificate search.
pub const DEFAULT_M_MAX: u32 = 60;

/// A certificate search problem: target class, forbidden support, and
/// integrality policy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateProblem {
    /// Number of markings.
    pub n: u8,
    /// The class the certificate must represent (up to a multiple).
    pub target: DivisorClass,
    /// Boundary classes the certificate's support must avoid.
    pub forbidden: BTreeSet<BoundaryIndex>,
    /// Whether all certificate coefficients must be integers.
    pub require_integral: bool,
    /// Whether the certificate may represent `m·target` for `m > 1`.
    pub allow_multiple: bool,
    /// Largest multiple considered before reporting failure.
    pub m_max: u32,
}

impl CertificateProblem {
    /// A problem with the default policy: rational coefficients allowed,
    /// multiples up to [`DEFAULT_M_MAX`].
    pub fn new(
        n: u8,
        target: DivisorClass,
        forbidden: impl IntoIterator<Item = BoundaryIndex>,
    ) -> Result<Self> {
        let problem = CertificateProblem {
            n,
            target,
            forbidden: forbidden.into_iter().collect(),
            require_integral: false,
            allow_multiple: true,
            m_max: DEFAULT_M_MAX,
        };
        problem.validate()?;
        Ok(problem)
    }

    /// Checks internal consistency (marking counts, positive `m_max`).
    pub fn validate(&self) -> Result<()> {
        if self.target.n() != self.n {
            return Err(Error::MismatchedN(self.n, self.target.n()));
        }
        if let Some(idx) = self.forbidden.iter().find(|idx| idx.n() != self.n) {
            return Err(Error::MismatchedN(self.n, idx.n()));
        }
        if self.m_max == 0 {
            return Err(Error::InvalidArgument("m_max must be at least 1".into()));
        }
        Ok(())
    }

    /// The image of the problem under a relabelling of the markings.
    pub fn apply_permutation(&self, perm: &[u8]) -> Result<Self> {
        Ok(CertificateProblem {
            n: self.n,
            target: self.target.apply_permutation(perm)?,
            forbidden: self
                .forbidden
                .iter()
                .map(|idx| idx.apply_permutation(perm))
                .collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    /// JSON form, with the target rendered in the divisor grammar.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "target": self.target.to_string(),
            "forbidden": self.forbidden.iter().map(|idx| idx.to_string()).collect::<Vec<_>>(),
            "require_integral": self.require_integral,
            "allow_multiple": self.allow_multiple,
            "m_max": self.m_max,
        })
    }

    /// Reads a problem from JSON.  `target` is a divisor expression;
    /// policy fields are optional and default as in [`Self::new`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("problem must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .and_then(|v| u8::try_from(v).ok())
            .ok_or_else(|| Error::Json("problem needs a small integer field \"n\"".into()))?;
        let target_text = obj
            .get("target")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Json("problem needs a string field \"target\"".into()))?;
        let target = crate::parse::parse_divisor(n, target_text)?;
        let mut forbidden = BTreeSet::new();
        if let Some(list) = obj.get("forbidden") {
            let items = list
                .as_array()
                .ok_or_else(|| Error::Json("\"forbidden\" must be an array".into()))?;
            for item in items {
                let text = item
                    .as_str()
                    .ok_or_else(|| Error::Json("forbidden entries must be strings".into()))?;
                forbidden.insert(crate::parse::parse_boundary_symbol(n, text)?);
            }
        }
        let flag = |key: &str, default: bool| -> Result<bool> {
            match obj.get(key) {
                None => Ok(default),
                Some(v) => v
                    .as_bool()
                    .ok_or_else(|| Error::Json(format!("\"{key}\" must be a boolean"))),
            }
        };
        let problem = CertificateProblem {
            n,
            target,
            forbidden,
            require_integral: flag("require_integral", false)?,
            allow_multiple: flag("allow_multiple", true)?,
            m_max: match obj.get("m_max") {
                None => DEFAULT_M_MAX,
                Some(v) => v
                    .as_u64()
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| Error::Json("\"m_max\" must be a small integer".into()))?,
            },
        };
        problem.validate()?;
        Ok(problem)
    }
}

/// A nonnegative boundary expression representing `multiple · target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    /// The multiple of the target this expression represents.
    pub multiple: u32,
    /// Nonzero coefficients by boundary class.
    pub coeffs: BTreeMap<BoundaryIndex, Q>,
}

impl Certificate {
    /// The boundary class `Σ c_I · B_I` of the certificate.
    pub fn class(&self, n: u8) -> Result<DivisorClass> {
        DivisorClass::from_parts(
            n,
            self.coeffs.iter().map(|(idx, c)| (*idx, c.clone())),
            std::iter::empty(),
        )
    }

    /// The image of the certificate under a relabelling of the markings.
    pub fn apply_permutation(&self, perm: &[u8]) -> Result<Self> {
        Ok(Certificate {
            multiple: self.multiple,
            coeffs: self
                .coeffs
                .iter()
                .map(|(idx, c)| Ok((idx.apply_permutation(perm)?, c.clone())))
                .collect::<Result<_>>()?,
        })
    }

    /// JSON form with exact coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(idx, c)| (idx.to_string(), serde_json::Value::String(format_q(c))))
            .collect();
        serde_json::json!({ "multiple": self.multiple, "coeffs": coeffs })
    }

    /// Reads a certificate from JSON produced by [`Self::to_json`].
    pub fn from_json(n: u8, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("certificate must be an object".into()))?;
        let multiple = obj
            .get("multiple")
            .and_then(|v| v.as_u64())
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| Error::Json("certificate needs an integer \"multiple\"".into()))?;
        let mut coeffs = BTreeMap::new();
        let entries = obj
            .get("coeffs")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Json("certificate needs an object \"coeffs\"".into()))?;
        for (key, val) in entries {
            let idx = crate::parse::parse_boundary_symbol(n, key)?;
            let text = val
                .as_str()
                .ok_or_else(|| Error::Json("coefficients must be strings".into()))?;
            let coeff = crate::rational::parse_q(text)?;
            if !coeff.is_zero() {
                coeffs.insert(idx, coeff);
            }
        }
        Ok(Certificate { multiple, coeffs })
    }
}

/// One F-curve on which a claimed certificate and its target disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FailingCurve {
    /// The witnessing curve.
    pub curve: FCurve,
    /// Pairing of the curve with the certificate's class.
    pub certificate_value: Q,
    /// Pairing of the curve with `multiple · target`.
    pub target_value: Q,
}

/// Outcome of checking a certificate against its problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    /// Support avoids every forbidden class.
    pub support_ok: bool,
    /// All coefficients are ≥ 0.
    pub nonnegative: bool,
    /// The certificate's class equals `multiple · target`, confirmed both by
    /// normal forms and by pairing with every F-curve.
    pub class_matches: bool,
    /// F-curves witnessing a class mismatch (empty when `class_matches`).
    pub failing_fcurves: Vec<FailingCurve>,
    /// Conjunction of the three flags above.
    pub verdict: bool,
}

impl VerifyReport {
    /// JSON rendering of the report.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "support_ok": self.support_ok,
            "nonnegative": self.nonnegative,
            "class_matches": self.class_matches,
            "failing_fcurves": self.failing_fcurves.iter().map(|f| {
                serde_json::json!({
                    "curve": f.curve.to_string(),
                    "certificate": format_q(&f.certificate_value),
                    "target": format_q(&f.target_value),
                })
            }).collect::<Vec<_>>(),
            "verdict": self.verdict,
        })
    }
}

/// Checks a certificate: support, nonnegativity, and the class identity via
/// two independent routes (relation normal forms and all F-curve pairings).
pub fn verify_certificate(
    problem: &CertificateProblem,
    certificate: &Certificate,
) -> Result<VerifyReport> {
    problem.validate()?;
    if certificate.multiple == 0 {
        return Err(Error::InvalidArgument(
            "certificate multiple must be at least 1".into(),
        ));
    }
    if certificate.multiple > 1 && !problem.allow_multiple {
        return Err(Error::InvalidArgument(format!(
            "certificate uses multiple {} but the problem disallows multiples",
            certificate.multiple
        )));
    }
    let support_ok = certificate
        .coeffs
        .keys()
        .all(|idx| idx.n() == problem.n && !problem.forbidden.contains(idx));
    let nonnegative = certificate.coeffs.values().all(|c| *c >= Q::zero());

    let cert_class = certificate.class(problem.n)?;
    let scaled_target = problem
        .target
        .scaled(&Q::from_integer(certificate.multiple.into()));

    let normal_forms_agree = class_equal(&cert_class, &scaled_target)?;
    let mut failing_fcurves = Vec::new();
    for curve in all_fcurves(problem.n)? {
        let certificate_value = pair_fcurve(&curve, &cert_class)?;
        let target_value = pair_fcurve(&curve, &scaled_target)?;
        if certificate_value != target_value {
            failing_fcurves.push(FailingCurve {
                curve,
                certificate_value,
                target_value,
            });
        }
    }
    let class_matches = normal_forms_agree && failing_fcurves.is_empty();
    let verdict = support_ok && nonnegative && class_matches;
    Ok(VerifyReport {
        support_ok,
        nonnegative,
        class_matches,
        failing_fcurves,
        verdict,
    })
}

/// Result of a certificate search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome {
    /// A certificate satisfying the problem's policy.
    Feasible(Certificate),
    /// No certificate exists within the policy; `reason` explains why.
    Infeasible {
        /// Human-readable explanation of the failure.
        reason: String,
    },
}

/// Searches for a certificate by exact linear programming.
///
/// Feasibility of the rational relaxation is independent of the multiple
/// `m`, so the search solves once at `m = 1`; when integral coefficients are
/// required the solution is cleared of denominators by the smallest scaling
/// `ℓ`, accepted if multiples are allowed and `ℓ ≤ m_max`.  The underlying
/// pivoting is deterministic, so equal problems always yield equal
/// certificates.
pub fn find_certificate(problem: &CertificateProblem) -> Result<SearchOutcome> {
    problem.validate()?;
    let basis = relation_basis(problem.n)?;
    let allowed: Vec<BoundaryIndex> = basis
        .classes()
        .iter()
        .filter(|idx| !problem.forbidden.contains(idx))
        .copied()
        .collect();
    let columns: Vec<Vec<Q>> = allowed
        .iter()
        .map(|idx| basis.quotient_coords(&DivisorClass::boundary(*idx)))
        .collect::<Result<_>>()?;
    let rhs = basis.quotient_coords(&problem.target)?;

    let Some(solution) = feasible_point(&columns, &rhs) else {
        return Ok(SearchOutcome::Infeasible {
            reason: "no nonnegative combination of the allowed boundary classes matches the \
                     target in the relation quotient (infeasible for every multiple m >= 1)"
                .into(),
        });
    };

    let mut multiple = 1u32;
    let mut coeffs: Vec<Q> = solution;
    if problem.require_integral {
        let scale = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if !scale.is_one() {
            if !problem.allow_multiple {
                return Ok(SearchOutcome::Infeasible {
                    reason: format!(
                        "the deterministic rational certificate is non-integral (smallest \
                         integral scaling {scale}) and multiples are disallowed"
                    ),
                });
            }
            if scale > BigInt::from(problem.m_max) {
                return Ok(SearchOutcome::Infeasible {
                    reason: format!(
                        "the smallest integral scaling {scale} exceeds m_max = {}",
                        problem.m_max
                    ),
                });
            }
            let factor = Q::from_integer(scale.clone());
            for c in &mut coeffs {
                *c *= &factor;
            }
            multiple = scale.to_u32().expect("scale fits: checked against m_max");
        }
    }

    Ok(SearchOutcome::Feasible(Certificate {
        multiple,
        coeffs: allowed
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }))
}

/// `5·B₂ + 3·B₃` as a class on M̄₀,₇: the divisor spanning the ray ψ−5K.
fn wall_divisor_e() -> DivisorClass {
    SymmetricDivisor::new(7, vec![crate::rational::q(5), crate::rational::q(3)])
        .expect("valid symmetric divisor")
        .expand()
}

/// `4·B₂ + 3·B₃` as a class on M̄₀,₇: the divisor spanning the ray ψ−3K.
fn wall_divisor_f() -> DivisorClass {
    SymmetricDivisor::new(7, vec![crate::rational::q(4), crate::rational::q(3)])
        .expect("valid symmetric divisor")
        .expand()
}

// Reference certificates, one per forbidden-pair orbit type.  Each entry is
// (coefficient, marking set); the expression equals its target at m = 1.

/// Certificate for `E = 5B₂+3B₃` avoiding the disjoint pair B{1,2}, B{3,4,5}.
const E_AVOIDING_DISJOINT: &[(i64, &[u8])] = &[
    (12, &[1, 4]),
    (9, &[2, 5]),
    (9, &[2, 6]),
    (9, &[5, 6]),
    (6, &[1, 3]),
    (6, &[1, 7]),
    (6, &[2, 3]),
    (6, &[2, 7]),
    (6, &[3, 4]),
    (6, &[3, 7]),
    (6, &[4, 7]),
    (3, &[1, 5]),
    (3, &[1, 6]),
    (3, &[3, 5]),
    (3, &[3, 6]),
    (3, &[4, 5]),
    (3, &[4, 6]),
    (3, &[5, 7]),
    (3, &[6, 7]),
    (15, &[2, 5, 6]),
    (12, &[1, 4, 7]),
    (12, &[1, 3, 4]),
    (6, &[1, 3, 7]),
    (6, &[1, 4, 5]),
    (6, &[1, 4, 6]),
    (6, &[2, 3, 5]),
    (6, &[2, 3, 6]),
    (6, &[2, 3, 7]),
    (6, &[2, 5, 7]),
    (6, &[2, 6, 7]),
    (6, &[3, 4, 7]),
    (3, &[1, 5, 6]),
    (3, &[3, 5, 6]),
    (3, &[4, 5, 6]),
    (3, &[5, 6, 7]),
];

/// Certificate for `E = 5B₂+3B₃` avoiding the nested pair B{1,2}, B{1,2,3}.
const E_AVOIDING_NESTED: &[(i64, &[u8])] = &[
    (12, &[1, 4]),
    (9, &[2, 6]),
    (9, &[2, 7]),
    (9, &[6, 7]),
    (6, &[1, 3]),
    (6, &[1, 5]),
    (6, &[2, 3]),
    (6, &[2, 5]),
    (6, &[3, 4]),
    (6, &[3, 5]),
    (6, &[4, 5]),
    (3, &[1, 6]),
    (3, &[1, 7]),
    (3, &[3, 6]),
    (3, &[3, 7]),
    (3, &[4, 6]),
    (3, &[4, 7]),
    (3, &[5, 6]),
    (3, &[5, 7]),
    (15, &[2, 6, 7]),
    (12, &[1, 3, 4]),
    (12, &[1, 4, 5]),
    (6, &[1, 3, 5]),
    (6, &[1, 4, 6]),
    (6, &[1, 4, 7]),
    (6, &[2, 3, 5]),
    (6, &[2, 3, 6]),
    (6, &[2, 3, 7]),
    (6, &[2, 5, 6]),
    (6, &[2, 5, 7]),
    (6, &[3, 4, 5]),
    (3, &[1, 6, 7]),
    (3, &[3, 6, 7]),
    (3, &[4, 6, 7]),
    (3, &[5, 6, 7]),
];

/// Certificate for `F = 4B₂+3B₃` avoiding the disjoint pair B{1,2}, B{3,4}.
const F_AVOIDING_DISJOINT: &[(i64, &[u8])] = &[
    (12, &[1, 3]),
    (9, &[2, 4]),
    (9, &[2, 6]),
    (9, &[4, 6]),
    (6, &[1, 5]),
    (6, &[1, 7]),
    (6, &[3, 5]),
    (6, &[3, 7]),
    (3, &[2, 5]),
    (3, &[2, 7]),
    (3, &[4, 5]),
    (3, &[4, 7]),
    (3, &[5, 6]),
    (3, &[5, 7]),
    (3, &[6, 7]),
    (18, &[2, 4, 6]),
    (15, &[1, 3, 5]),
    (15, &[1, 3, 7]),
    (6, &[1, 5, 7]),
    (6, &[2, 4, 5]),
    (6, &[2, 4, 7]),
    (6, &[2, 5, 6]),
    (6, &[2, 6, 7]),
    (6, &[3, 5, 7]),
    (6, &[4, 5, 6]),
    (6, &[4, 6, 7]),
    (3, &[1, 2, 3]),
    (3, &[1, 3, 4]),
    (3, &[1, 3, 6]),
];

fn table_certificate(table: &[(i64, &[u8])]) -> Certificate {
    let coeffs = table
        .iter()
        .map(|&(c, set)| {
            let idx = BoundaryIndex::new(7, set.iter().copied()).expect("reference data");
            (idx, crate::rational::q(c))
        })
        .collect::<BTreeMap<_, _>>();
    assert_eq!(coeffs.len(), table.len(), "reference data has duplicates");
    Certificate {
        multiple: 1,
        coeffs,
    }
}

fn forbidden_pair(a: &[u8], b: &[u8]) -> BTreeSet<BoundaryIndex> {
    [a, b]
        .into_iter()
        .map(|set| BoundaryIndex::new(7, set.iter().copied()).expect("reference data"))
        .collect()
}

/// The three reference certificates with their problems, one per orbit type
/// of intersecting boundary pairs: disjoint 2/3-sets, nested 2/3-sets, and
/// disjoint 2/2-sets.
pub fn builtin_certificates() -> Result<Vec<(CertificateProblem, Certificate)>> {
    let e = wall_divisor_e();
    let f = wall_divisor_f();
    Ok(vec![
        (
            CertificateProblem::new(7, e.clone(), forbidden_pair(&[1, 2], &[3, 4, 5]))?,
            table_certificate(E_AVOIDING_DISJOINT),
        ),
        (
            CertificateProblem::new(7, e, forbidden_pair(&[1, 2], &[1, 2, 3]))?,
            table_certificate(E_AVOIDING_NESTED),
        ),
        (
            CertificateProblem::new(7, f, forbidden_pair(&[1, 2], &[3, 4]))?,
            table_certificate(F_AVOIDING_DISJOINT),
        ),
    ])
}

/// A curve family covering a base-locus stratum, paired negatively with the
/// range's divisors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InclusionWitness {
    /// The covering curve class.
    pub curve: CurveClass,
    /// Its pairing with the range's representative divisor (negative).
    pub pairing: Q,
}

/// A certificate excluding a boundary-pair stratum from the base locus, with
/// the size of its orbit under relabelling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExclusionWitness {
    /// The search problem for one orbit representative.
    pub problem: CertificateProblem,
    /// Number of boundary pairs in the orbit of the representative.
    pub orbit_size: u64,
    /// The certificate found for the representative.
    pub certificate: Certificate,
}

/// One range of the effective cone with its stable base locus and the
/// witnesses establishing both inclusion and exclusion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseLocusEntry {
    /// Interval notation for the range, walls ordered by slope.
    pub range_label: String,
    /// The stable base locus throughout the range.
    pub locus: StableBaseLocus,
    /// A divisor inside the range.
    pub representative: SymmetricDivisor,
    /// Curves covering the locus and pairing negatively with the range.
    pub inclusion: Vec<InclusionWitness>,
    /// Certificates showing nothing outside the locus is in the base locus.
    pub exclusion: Vec<ExclusionWitness>,
}

impl BaseLocusEntry {
    /// JSON rendering of the entry.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "range": self.range_label,
            "locus": self.locus.as_str(),
            "representative": self.representative.to_string(),
            "inclusion": self.inclusion.iter().map(|w| serde_json::json!({
                "curve": w.curve.to_string(),
                "pairing": format_q(&w.pairing),
            })).collect::<Vec<_>>(),
            "exclusion": self.exclusion.iter().map(|w| serde_json::json!({
                "problem": w.problem.to_json(),
                "orbit_size": w.orbit_size,
                "certificate": w.certificate.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn divisor_27(b2: i64, b3: i64) -> SymmetricDivisor {
    SymmetricDivisor::new(7, vec![crate::rational::q(b2), crate::rational::q(b3)])
        .expect("valid symmetric divisor")
}

fn inclusion_witnesses(
    representative: &SymmetricDivisor,
    curves: &[CurveClass],
) -> Result<Vec<InclusionWitness>> {
    let mut witnesses = curves
        .iter()
        .map(|curve| {
            let pairing = crate::symmetric::pair_curve(curve, representative)?;
            Ok(InclusionWitness {
                curve: *curve,
                pairing,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    witnesses.sort_by_key(|w| w.curve.to_string());
    Ok(witnesses)
}

fn exclusion_witness(
    target: DivisorClass,
    forbidden: BTreeSet<BoundaryIndex>,
    orbit_size: u64,
) -> Result<ExclusionWitness> {
    let problem = CertificateProblem::new(7, target, forbidden)?;
    match find_certificate(&problem)? {
        SearchOutcome::Feasible(certificate) => Ok(ExclusionWitness {
            problem,
            orbit_size,
            certificate,
        }),
        SearchOutcome::Infeasible { reason } => Err(Error::InvalidArgument(format!(
            "reference exclusion problem unexpectedly infeasible: {reason}"
        ))),
    }
}

/// The stable-base-locus decomposition of the symmetric effective cone of
/// M̄₀,₇, one entry per range, swept from the B₂ ray towards the B₃ ray.
///
/// Inclusion witnesses are sweeping/covering curves with negative pairing on
/// the range; exclusion witnesses are certificates (rediscovered by
/// [`find_certificate`], not copied from the reference data) for one
/// representative of each orbit of intersecting forbidden pairs, together
/// with the orbit size.  Witness lists are sorted for stable output.
pub fn base_locus_report(n: u8) -> Result<Vec<BaseLocusEntry>> {
    if n != 7 {
        return Err(Error::UnsupportedN(
            n,
            "the base-locus decomposition is an n = 7 result",
        ));
    }
    let f1222 = CurveClass::fcurve_type(7, [1, 2, 2, 2])?;
    let f1114 = CurveClass::fcurve_type(7, [1, 1, 1, 4])?;
    let curve_a = CurveClass::curve_a(7)?;
    let c5 = CurveClass::sweeping(7, 5)?;

    let entries = vec![
        BaseLocusEntry {
            range_label: "[B2, psi-5K)".into(),
            locus: StableBaseLocus::B2,
            representative: divisor_27(2, 1),
            inclusion: inclusion_witnesses(&divisor_27(2, 1), &[f1222, curve_a, c5])?,
            exclusion: Vec::new(),
        },
        BaseLocusEntry {
            range_label: "[psi-5K, psi-3K)".into(),
            locus: StableBaseLocus::B2Double,
            representative: divisor_27(3, 2),
            inclusion: inclusion_witnesses(&divisor_27(3, 2), &[f1222, curve_a])?,
            exclusion: vec![
                exclusion_witness(wall_divisor_e(), forbidden_pair(&[1, 2], &[3, 4, 5]), 210)?,
                exclusion_witness(wall_divisor_e(), forbidden_pair(&[1, 2], &[1, 2, 3]), 105)?,
            ],
        },
        BaseLocusEntry {
            range_label: "[psi-3K, psi-K)".into(),
            locus: StableBaseLocus::B2Triple,
            representative: divisor_27(7, 6),
            inclusion: inclusion_witnesses(&divisor_27(7, 6), &[f1222])?,
            exclusion: vec![exclusion_witness(
                wall_divisor_f(),
                forbidden_pair(&[1, 2], &[3, 4]),
                105,
            )?],
        },
        BaseLocusEntry {
            range_label: "[psi-K, K+psi/3]".into(),
            locus: StableBaseLocus::Empty,
            representative: divisor_27(1, 2),
            inclusion: Vec::new(),
            exclusion: Vec::new(),
        },
        BaseLocusEntry {
            range_label: "(K+psi/3, B3]".into(),
            locus: StableBaseLocus::B3,
            representative: divisor_27(1, 4),
            inclusion: inclusion_witnesses(&divisor_27(1, 4), &[f1114])?,
            exclusion: Vec::new(),
        },
    ];
    Ok(entries)
}
