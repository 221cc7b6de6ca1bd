//! Distance sets, pinned distance sets, the square-lattice distance count,
//! Guth-Katz ratio tracking, and pinned dot-product sets with their scaling
//! invariance.
//!
//! All distances are kept squared so that every value is rational and every
//! comparison exact. Squaring is injective on nonnegative reals, so distinct
//! squared values and distinct true distances are counted identically.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::point::{dot, RatPoint};
use super::GeomError;
use crate::report::{BoundReport, Tier};

/// A duplicate-free sorted set of squared distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaredDistanceSet {
    values: Vec<BigRational>,
    include_zero: bool,
}

impl SquaredDistanceSet {
    fn from_set(values: BTreeSet<BigRational>) -> SquaredDistanceSet {
        let include_zero = values.iter().next().is_some_and(Zero::is_zero);
        SquaredDistanceSet { values: values.into_iter().collect(), include_zero }
    }

    /// Sorted squared distances, zero first when present.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether the zero distance (coincident pairs) is among the values.
    pub fn include_zero(&self) -> bool {
        self.include_zero
    }

    /// The same set with the zero distance dropped.
    pub fn without_zero(&self) -> SquaredDistanceSet {
        let values: Vec<BigRational> =
            self.values.iter().filter(|v| !v.is_zero()).cloned().collect();
        SquaredDistanceSet { values, include_zero: false }
    }
}

fn squared_displacement(x: &RatPoint, y: &RatPoint) -> Result<BigRational, GeomError> {
    let d = x.displacement_to(y)?;
    Ok(dot(&d, &d))
}

/// The squared distances over all pairs of `xs`, the zero from coincident
/// pairs included. Needs a nonempty set.
pub fn distance_set(xs: &[RatPoint]) -> Result<SquaredDistanceSet, GeomError> {
    if xs.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let mut values = BTreeSet::new();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            values.insert(squared_displacement(x, y)?);
        }
    }
    Ok(SquaredDistanceSet::from_set(values))
}

/// The squared distances from the pin to every point of `xs`; zero appears
/// exactly when the pin belongs to the set. Needs a nonempty set.
pub fn pinned_distance_set(
    pin: &RatPoint,
    xs: &[RatPoint],
) -> Result<SquaredDistanceSet, GeomError> {
    if xs.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let mut values = BTreeSet::new();
    for x in xs {
        values.insert(squared_displacement(pin, x)?);
    }
    Ok(SquaredDistanceSet::from_set(values))
}

/// The distance count of the integer lattice `[0, p]^n` against the
/// `n p^2 + 1` cap.
///
/// Coordinate differences of lattice pairs range over `[0, p]` in absolute
/// value and every difference tuple is realized (pair it with the origin),
/// so the squared distances are exactly the sums of `n` squares from
/// `{0..p}`. Those sums live in `[0, n p^2]`, hence at most `n p^2 + 1`
/// distinct values counting zero; the classical statement leaves the
/// coincident-pair zero out and reads `n p^2`. Both counts are recorded.
pub fn lattice_report(p: u64, n: usize, cap: u64) -> Result<BoundReport, GeomError> {
    if n < 1 {
        return Err(GeomError::OutOfRange(format!("lattice dimension must be >= 1, got {n}")));
    }
    let size = (p + 1)
        .checked_pow(n as u32)
        .filter(|&s| s <= cap)
        .ok_or_else(|| {
            GeomError::OutOfRange(format!("lattice [0,{p}]^{n} exceeds the cap of {cap} points"))
        })?;
    let mut sums: BTreeSet<u64> = [0u64].into();
    for _ in 0..n {
        sums = sums
            .iter()
            .flat_map(|s| (0..=p).map(move |d| s + d * d))
            .collect();
    }
    let distinct = sums.len() as u64;
    Ok(BoundReport::exact(
        "lattice_distances",
        "square-lattice distance count",
        distinct,
        BigRational::from_integer((n as u64 * p * p + 1).into()),
        Tier::Blocking,
    )
    .with_param("p", p)
    .with_param("dimension", n)
    .with_param("points", size)
    .with_param("distinct_with_zero", distinct)
    .with_param("distinct_without_zero", distinct.saturating_sub(1))
    .with_param("bound_without_zero", n as u64 * p * p))
}

/// Tracking data for the distinct-distance lower bound in the plane: the
/// theorem's target `|X| / log |X|` carries an unspecified constant and an
/// asymptotic regime, so nothing is asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkRatio {
    pub set_size: u64,
    /// Distinct squared distances, zero included.
    pub distinct: u64,
    /// `|X| / ln |X|`, 6 digits. Tracking output only; no decision reads it.
    pub target: String,
    /// `distinct / target`, 6 digits. Tracking output only.
    pub ratio: String,
}

/// The Guth-Katz tracking row for a planar set of at least two points.
pub fn gk_ratio(xs: &[RatPoint]) -> Result<GkRatio, GeomError> {
    let distinct_points: BTreeSet<&RatPoint> = xs.iter().collect();
    let m = distinct_points.len();
    if m < 2 {
        return Err(GeomError::TooFewPoints { required: 2, got: m });
    }
    if let Some(p) = xs.iter().find(|p| p.n() != 2) {
        return Err(GeomError::NotPlanar { got: p.n() });
    }
    let distinct = distance_set(xs)?.len() as u64;
    let target = m as f64 / (m as f64).ln();
    Ok(GkRatio {
        set_size: m as u64,
        distinct,
        target: format!("{target:.6}"),
        ratio: format!("{:.6}", distinct as f64 / target),
    })
}

/// The pinned dot-product set: every value `a . y` for `y` in the set.
pub fn dot_product_set(
    a: &RatPoint,
    ys: &[RatPoint],
) -> Result<BTreeSet<BigRational>, GeomError> {
    ys.iter()
        .map(|y| {
            if y.n() != a.n() {
                Err(GeomError::MixedDimensions)
            } else {
                Ok(dot(a.coords(), y.coords()))
            }
        })
        .collect()
}

/// Check the scaling invariance of pinned dot-product sets: for a nonzero
/// rational `scale`, the set pinned at `scale * a` equals `scale` times the
/// set pinned at `a`, element for element, so in particular the two
/// cardinalities agree. The report counts symmetric-difference violations
/// against zero and blocks, since the identity is forced by bilinearity.
pub fn dot_scaling_check(
    a: &RatPoint,
    scale: &BigRational,
    ys: &[RatPoint],
) -> Result<BoundReport, GeomError> {
    if scale.is_zero() {
        return Err(GeomError::OutOfRange(
            "scale factor must be nonzero; the zero pin collapses every set".into(),
        ));
    }
    let base = dot_product_set(a, ys)?;
    let scaled_pin = RatPoint::new(a.coords().iter().map(|c| c * scale).collect())?;
    let at_scaled = dot_product_set(&scaled_pin, ys)?;
    let expected: BTreeSet<BigRational> = base.iter().map(|v| v * scale).collect();
    let mismatches = at_scaled.symmetric_difference(&expected).count() as u64;
    Ok(BoundReport::exact(
        "dot_scaling",
        "dot-product scaling invariance",
        mismatches,
        BigRational::zero(),
        Tier::Blocking,
    )
    .with_param("scale", scale)
    .with_param("set_size", ys.len())
    .with_param("cardinality", base.len())
    .with_param("cardinality_scaled", at_scaled.len()))
}
