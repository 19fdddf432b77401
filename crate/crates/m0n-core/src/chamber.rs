//! Wall-and-chamber classification of symmetric effective divisors on M̄₀,₇.
//!
//! In (B₂, B₃) coordinates the effective symmetric cone is the closed first
//! quadrant, subdivided by the rays (listed by increasing slope b/a):
//!
//! ```text
//! B₂ = (1,0)  <  ψ−5K ∝ (5,3)  <  ψ−3K ∝ (4,3)  <  ψ−K ∝ (1,1)
//!             <  K+ψ/3 ∝ (1,3)  <  B₃ = (0,1)
//! ```
//!
//! Every ray in the open quadrant falls in one of the model regions; the
//! classification depends only on the ray, so [`chamber_lookup`] is
//! scale-invariant.  Each report carries the projective model of the region,
//! the stable base locus of its divisors, and — on a wall — the models of
//! both adjacent regions.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::rational::Q;
use crate::symmetric::SymmetricDivisor;
use crate::{Error, Result};

/// The region kinds of the symmetric effective cone of M̄₀,₇: the eight model
/// cases plus everything outside the cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChamberId {
    /// Open ample chamber between ψ−K and K+ψ/3.
    AmpleInterior,
    /// Half-open region [K+ψ/3, B₃): the Hassett model with weights 1/3.
    HassettRange,
    /// The ray ψ−K: the degree-3 Veronese quotient.
    VeroneseRay,
    /// Open chamber (ψ−3K, ψ−K): the first flip.
    FirstFlipChamber,
    /// The ray ψ−3K: a small contraction of the first flip.
    SmallContractionRay,
    /// Open chamber (ψ−5K, ψ−3K): the second flip.
    SecondFlipChamber,
    /// Half-open region (B₂, ψ−5K]: the divisorial contraction of B₂.
    DivisorialRange,
    /// The boundary rays B₂ and B₃ themselves.
    BoundaryRay,
    /// Rays outside the closed first quadrant.
    OutsideEffective,
}

impl ChamberId {
    /// Stable machine-readable name.
    pub fn as_str(&self) -> &'static str {
        match self {
            ChamberId::AmpleInterior => "ample_interior",
            ChamberId::HassettRange => "hassett_range",
            ChamberId::VeroneseRay => "veronese_ray",
            ChamberId::FirstFlipChamber => "first_flip_chamber",
            ChamberId::SmallContractionRay => "small_contraction_ray",
            ChamberId::SecondFlipChamber => "second_flip_chamber",
            ChamberId::DivisorialRange => "divisorial_range",
            ChamberId::BoundaryRay => "boundary_ray",
            ChamberId::OutsideEffective => "outside_effective",
        }
    }
}

impl fmt::Display for ChamberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The stable base locus attached to a region of the effective cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StableBaseLocus {
    /// Base-point free up to multiples.
    Empty,
    /// The size-3 boundary B₃.
    B3,
    /// Triple self-intersection stratum of B₂.
    B2Triple,
    /// Double self-intersection stratum of B₂.
    B2Double,
    /// The size-2 boundary B₂.
    B2,
    /// Not effective: every linear system is empty.
    Everything,
}

impl StableBaseLocus {
    /// Stable machine-readable name.
    pub fn as_str(&self) -> &'static str {
        match self {
            StableBaseLocus::Empty => "empty",
            StableBaseLocus::B3 => "B3",
            StableBaseLocus::B2Triple => "B2^3",
            StableBaseLocus::B2Double => "B2^2",
            StableBaseLocus::B2 => "B2",
            StableBaseLocus::Everything => "everything",
        }
    }
}

impl fmt::Display for StableBaseLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Model labels, one per region of the decomposition.
mod model {
    pub const M07: &str = "M̄₀,₇";
    pub const HASSETT: &str = "M̄₀,A";
    pub const VERONESE: &str = "V_A³";
    pub const FLIP3: &str = "M̄₀,₇³";
    pub const FLIP3_SMALL: &str = "small contraction of M̄₀,₇³";
    pub const FLIP2: &str = "M̄₀,₇²";
    pub const DIVISORIAL: &str = "M̄₀,₇¹";
    pub const POINT: &str = "point";
    pub const NONE: &str = "none";
}

/// Classification of one symmetric divisor: region, model, base locus, and
/// wall data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChamberReport {
    /// Which region of the decomposition the ray lies in.
    pub chamber_id: ChamberId,
    /// Interval notation for the region, walls ordered by slope.
    pub region_label: String,
    /// The projective model associated with the region.
    pub model_label: String,
    /// Stable base locus of divisors on this ray.
    pub stable_base_locus: StableBaseLocus,
    /// Whether the ray is one of the six walls.
    pub on_wall: bool,
    /// Names of the walls the ray lies on (at most one for nonzero input).
    pub wall_names: Vec<String>,
    /// On a wall: the models of the two regions meeting there (one for the
    /// outermost walls B₂, B₃).
    pub adjacent_models: Vec<String>,
}

impl ChamberReport {
    /// JSON rendering of the report.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "chamber": self.chamber_id.as_str(),
            "region": self.region_label,
            "model": self.model_label,
            "stable_base_locus": self.stable_base_locus.as_str(),
            "on_wall": self.on_wall,
            "walls": self.wall_names,
            "adjacent_models": self.adjacent_models,
        })
    }
}

fn report(
    chamber_id: ChamberId,
    region_label: &str,
    model_label: &str,
    locus: StableBaseLocus,
    wall: Option<(&str, &[&str])>,
) -> ChamberReport {
    let (on_wall, wall_names, adjacent_models) = match wall {
        Some((name, adjacent)) => (
            true,
            vec![name.to_owned()],
            adjacent.iter().map(|&m| m.to_owned()).collect(),
        ),
        None => (false, Vec::new(), Vec::new()),
    };
    ChamberReport {
        chamber_id,
        region_label: region_label.to_owned(),
        model_label: model_label.to_owned(),
        stable_base_locus: locus,
        on_wall,
        wall_names,
        adjacent_models,
    }
}

/// Classifies the ray of a symmetric divisor on M̄₀,₇.
///
/// The result depends only on the ray: `chamber_lookup(λ·S)` equals
/// `chamber_lookup(S)` for every rational λ > 0.  The zero divisor spans no
/// ray and is rejected.
pub fn chamber_lookup(divisor: &SymmetricDivisor) -> Result<ChamberReport> {
    if divisor.n() != 7 {
        return Err(Error::UnsupportedN(
            divisor.n(),
            "the chamber decomposition is an n = 7 result",
        ));
    }
    let a = divisor.coeff(2);
    let b = divisor.coeff(3);
    let zero = Q::zero();
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero divisor spans no ray".into(),
        ));
    }
    if a < zero || b < zero {
        return Ok(report(
            ChamberId::OutsideEffective,
            "outside the effective cone",
            model::NONE,
            StableBaseLocus::Everything,
            None,
        ));
    }
    if a.is_zero() {
        return Ok(report(
            ChamberId::BoundaryRay,
            "B3",
            model::POINT,
            StableBaseLocus::B3,
            Some(("B3", &[model::HASSETT])),
        ));
    }
    if b.is_zero() {
        return Ok(report(
            ChamberId::BoundaryRay,
            "B2",
            model::POINT,
            StableBaseLocus::B2,
            Some(("B2", &[model::DIVISORIAL])),
        ));
    }
    // Interior ray with a, b > 0: order the slope b/a against the wall slopes
    // 3, 1, 3/4, 3/5 by exact cross-multiplication.
    let slope_cmp = |num: i64, den: i64| -> Ordering {
        // compares b/a with num/den, both positive
        (&b * crate::rational::q(den)).cmp(&(&a * crate::rational::q(num)))
    };
    Ok(match slope_cmp(3, 1) {
        Ordering::Greater => report(
            ChamberId::HassettRange,
            "[K+psi/3, B3)",
            model::HASSETT,
            StableBaseLocus::B3,
            None,
        ),
        Ordering::Equal => report(
            ChamberId::HassettRange,
            "[K+psi/3, B3)",
            model::HASSETT,
            StableBaseLocus::Empty,
            Some(("K+psi/3", &[model::M07, model::HASSETT])),
        ),
        Ordering::Less => match slope_cmp(1, 1) {
            Ordering::Greater => report(
                ChamberId::AmpleInterior,
                "(psi-K, K+psi/3)",
                model::M07,
                StableBaseLocus::Empty,
                None,
            ),
            Ordering::Equal => report(
                ChamberId::VeroneseRay,
                "psi-K",
                model::VERONESE,
                StableBaseLocus::Empty,
                Some(("psi-K", &[model::M07, model::FLIP3])),
            ),
            Ordering::Less => match slope_cmp(3, 4) {
                Ordering::Greater => report(
                    ChamberId::FirstFlipChamber,
                    "(psi-3K, psi-K)",
                    model::FLIP3,
                    StableBaseLocus::B2Triple,
                    None,
                ),
                Ordering::Equal => report(
                    ChamberId::SmallContractionRay,
                    "psi-3K",
                    model::FLIP3_SMALL,
                    StableBaseLocus::B2Triple,
                    Some(("psi-3K", &[model::FLIP3, model::FLIP2])),
                ),
                Ordering::Less => match slope_cmp(3, 5) {
                    Ordering::Greater => report(
                        ChamberId::SecondFlipChamber,
                        "(psi-5K, psi-3K)",
                        model::FLIP2,
                        StableBaseLocus::B2Double,
                        None,
                    ),
                    Ordering::Equal => report(
                        ChamberId::DivisorialRange,
                        "(B2, psi-5K]",
                        model::DIVISORIAL,
                        StableBaseLocus::B2Double,
                        Some(("psi-5K", &[model::FLIP2, model::DIVISORIAL])),
                    ),
                    Ordering::Less => report(
                        ChamberId::DivisorialRange,
                        "(B2, psi-5K]",
                        model::DIVISORIAL,
                        StableBaseLocus::B2,
                        None,
                    ),
                },
            },
        },
    })
}
