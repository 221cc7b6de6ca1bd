//! Exact rational-arithmetic incidence geometry in the plane and `Q^n`:
//! points, lines, incidence bounds, direction sets, Beck-type dichotomies,
//! Furstenberg configurations, and distance and dot-product sets.
//!
//! Every predicate here is exact. Points carry `BigRational` coordinates,
//! lines are stored in a canonical form so that structural equality is
//! geometric equality, and inequalities whose right sides involve square or
//! cube roots are decided by comparing integer powers of rearranged sides.
//! No floating point participates in any decision.

pub mod beck;
pub mod directions;
pub mod dist;
pub mod furst;
pub mod incidence;
pub mod line;
pub mod point;

pub use beck::{
    beck_bivariate_report, beck_report, connecting_lines, connecting_lines_between,
    erdos_beck_report, max_collinear, nonconcentration, pinned_directions, pinned_radial_report,
    radial_containment_check, BeckBranch, BeckDiagnostics, Nonconcentration,
};
pub use directions::{
    covering_count, direction_set, exceptional_directions, ordinary_lines, ungar_report,
    DirectionClass, OrdinaryLines,
};
pub use dist::{
    distance_set, dot_product_set, dot_scaling_check, gk_ratio, lattice_report,
    pinned_distance_set, GkRatio, SquaredDistanceSet,
};
pub use furst::{
    dual_furst_verify, furst_verify, grid_example, sharpness_ratio_sq, FurstConfig,
};
pub use incidence::{
    bound_report_cs_st, dualize, dualize_line, generic_project, incidences, rich_lines,
    rich_points, shear_planar, IncidenceTally, ShearedPlane,
};
pub use line::RatLine;
pub use point::RatPoint;

use thiserror::Error;

/// Errors from rational-geometry constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("the two points coincide; no unique line passes through them")]
    CoincidentPoints,
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("operands have mismatched ambient dimensions")]
    MixedDimensions,
    #[error("the point set is empty")]
    EmptySet,
    #[error("need at least {required} distinct points, got {got}")]
    TooFewPoints { required: usize, got: usize },
    #[error("ambient dimension must be at least {required}, got {got}")]
    DimensionTooSmall { required: usize, got: usize },
    #[error("operation is defined in the plane only, got dimension {got}")]
    NotPlanar { got: usize },
    #[error("a vertical line has no slope-intercept dual; shear the configuration first")]
    VerticalLine,
    #[error("the points are collinear; {0}")]
    Collinear(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no admissible sample found after {attempts} attempts")]
    RetryLimit { attempts: u32 },
    #[error("configuration violates its hypotheses: {0}")]
    InvalidConfig(String),
}
