//! Exact-arithmetic incidence geometry at desk scale.
//!
//! The crate has two halves. The `ff` modules do enumerative geometry over
//! prime fields and one quadratic extension: vectors, lines, subspaces,
//! flats, the discrete Fourier transform, and exhaustive exceptional-set
//! sweeps for orthogonal and radial projections. The `euclid` modules do the
//! rational-coordinate analogues: incidence counting, point-line duality,
//! direction sets, Beck-type dichotomies, Furstenberg configurations, and
//! distance and dot-product sets.
//!
//! Everything that decides an inequality does so exactly. Counts are
//! integers, geometry is `BigRational`, and bounds involving square or cube
//! roots are decided by comparing squares or cubes of rearranged sides in
//! big-integer arithmetic. The only floating point in the crate lives in the
//! Fourier module, whose identities are checked against a scaled tolerance.
//!
//! Checked inequalities are packaged as [`report::BoundReport`] values, which
//! serialize to JSON lines. Reports come in two tiers: `Blocking` for bounds
//! backed by an exact-constant theorem (a violation is a bug or a broken
//! hypothesis) and `Tracked` for bounds whose constants are only known up to
//! an unspecified factor (the ratio data is the point; the pass flag is
//! informational).

pub mod config;
pub mod euclid;
pub mod ff;
pub mod report;
pub mod rng;

/// Default ceiling on the number of points a single enumeration may touch.
///
/// Sweeps refuse to enumerate an ambient space with more than this many
/// points unless the caller raises the cap explicitly.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;
