//! Exact-arithmetic divisor/curve intersection calculus on the moduli spaces
//! M̄₀,ₙ of stable n-pointed rational curves.
//!
//! The crate manipulates divisor classes in N¹(M̄₀,ₙ)_ℚ in the boundary/ψ
//! coordinate system, reduces them to normal form modulo the Keel relations,
//! pairs them against F-curves and sweeping curves, classifies symmetric
//! divisors on M̄₀,₇ into their wall-and-chamber regions, and searches for
//! nonnegative boundary expressions ("certificates") with prescribed vanishing
//! via an exact rational phase-1 simplex.  Every computation is carried out
//! over ℚ with arbitrary-precision integers; there is no floating point in any
//! mathematical path.
//!
//! Module map:
//! - [`boundary`], [`divisor`], [`fcurve`], [`relations`] — the core algebra:
//!   canonical boundary indices, sparse divisor classes, intersection pairing,
//!   Keel relations and normal forms.
//! - [`symmetric`], [`chamber`] — the Sₙ-invariant slice, the intersection
//!   table for n = 7 and the chamber classification of symmetric effective
//!   divisors.
//! - [`simplex`], [`cert`] — exact LP feasibility and base-locus certificates.
//! - [`graphs`] — dual graphs of stable curves, Hassett and Veronese
//!   reductions, boundary-stratum enumeration.
//! - [`parse`] — the divisor expression grammar, curve syntax and the tree
//!   text format used by the CLI and the browser demo.
//! - [`verify`] — the built-in golden verification suite.

pub mod boundary;
pub mod cert;
pub mod chamber;
pub mod divisor;
pub mod fcurve;
pub mod graphs;
pub mod parse;
pub mod rational;
pub mod relations;
pub mod simplex;
pub mod symmetric;
pub mod verify;

pub use boundary::{all_boundary_classes, canonical_boundary, BoundaryIndex};
pub use cert::{
    base_locus_report, builtin_certificates, find_certificate, verify_certificate,
    BaseLocusEntry, Certificate, CertificateProblem, ExclusionWitness, FailingCurve,
    InclusionWitness, SearchOutcome, VerifyReport, DEFAULT_M_MAX,
};
pub use chamber::{chamber_lookup, ChamberId, ChamberReport, StableBaseLocus};
pub use divisor::DivisorClass;
pub use fcurve::{all_fcurves, fcurve_types, pair_fcurve, FCurve};
pub use graphs::{
    enumerate_strata, hassett_reduce, sigma, validate_hassett_stable, veronese_reduce,
    ContractionRecord, Leg, MarkedTree, ReductionReport, StratumDescriptor, WeightData,
};
pub use rational::Q;
pub use relations::{
    class_equal, keel_relations, matrix_rank, normal_form, relation_basis, RelationBasis,
};
pub use symmetric::{
    canonical_and_psi, expand_symmetric, intersection_table, nef_check, pair_curve,
    CurveClass, IntersectionTable, SymmetricDivisor, TableRow,
};
pub use verify::{render_text, run_all_checks, Check};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A subset that does not name a boundary divisor (size outside 2..=n-2,
    /// elements outside 1..=n, or n out of the supported range).
    #[error("invalid boundary index: {0}")]
    InvalidBoundary(String),
    /// Two values built for different marked-point counts were combined.
    #[error("mismatched n: {0} vs {1}")]
    MismatchedN(u8, u8),
    /// The operation is defined, but not for this n.
    #[error("unsupported n = {0}: {1}")]
    UnsupportedN(u8, &'static str),
    /// Expression or file syntax error, with a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// Weight data violating 0 < aᵢ ≤ 1, Σaᵢ > 2, 0 ≤ γ < 1 or the
    /// normalization (d−1)γ + Σaᵢ = d+1.
    #[error("invalid weight data: {0}")]
    InvalidWeights(String),
    /// A marked tree violating its structural invariants.
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    /// Any other precondition violation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Cache or file i/o failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// A JSON payload that does not match the expected shape.
    #[error("malformed json: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable identifier for this error's variant, used by
    /// every front end that reports errors as structured data.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidBoundary(_) => "invalid_boundary",
            Error::MismatchedN(_, _) => "mismatched_n",
            Error::UnsupportedN(_, _) => "unsupported_n",
            Error::Parse { .. } => "parse",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::InvalidTree(_) => "invalid_tree",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
