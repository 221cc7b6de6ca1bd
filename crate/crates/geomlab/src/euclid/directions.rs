//! Direction sets, line-covering counts, exceptional directions, ordinary
//! lines, and Ungar's direction-count bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::line::RatLine;
use super::point::{dot, normalize_projective, scale, RatPoint};
use super::GeomError;
use crate::report::{decimal, ratio_u64, BoundReport, Tier};

/// A projective direction class in `Q^n`.
///
/// The representative is scaled so its first nonzero coordinate is 1, which
/// identifies opposite vectors: a direction and its negation name the same
/// class. Covering counts and exceptional-set membership only depend on the
/// class, so this quotient is the faithful domain for both; an oriented
/// direction set would simply double every count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectionClass {
    vector: Vec<BigRational>,
}

impl DirectionClass {
    /// The class of a nonzero vector.
    pub fn from_vector(v: &[BigRational]) -> Result<DirectionClass, GeomError> {
        if v.len() < 2 {
            return Err(GeomError::DimensionTooSmall { required: 2, got: v.len() });
        }
        let vector = normalize_projective(v).ok_or(GeomError::ZeroDirection)?;
        Ok(DirectionClass { vector })
    }

    /// The class of the segment from `x` to `y`, `x != y`.
    pub fn between(x: &RatPoint, y: &RatPoint) -> Result<DirectionClass, GeomError> {
        DirectionClass::from_vector(&x.displacement_to(y)?).map_err(|e| match e {
            GeomError::ZeroDirection => GeomError::CoincidentPoints,
            other => other,
        })
    }

    pub fn vector(&self) -> &[BigRational] {
        &self.vector
    }

    pub fn n(&self) -> usize {
        self.vector.len()
    }

    /// The foot of the perpendicular from `x` onto the hyperplane through
    /// the origin orthogonal to this direction. Two points share a foot
    /// exactly when their difference is parallel to the direction, so the
    /// feet are canonical labels for the fibers of that projection.
    fn projection_label(&self, x: &RatPoint) -> Vec<BigRational> {
        let t = dot(x.coords(), &self.vector) / dot(&self.vector, &self.vector);
        x.coords()
            .iter()
            .zip(scale(&self.vector, &t))
            .map(|(c, s)| c - s)
            .collect()
    }
}

fn distinct_points(xs: &[RatPoint]) -> Result<Vec<RatPoint>, GeomError> {
    let set: BTreeSet<RatPoint> = xs.iter().cloned().collect();
    let mut dims = set.iter().map(RatPoint::n);
    if let Some(first) = dims.next() {
        if dims.any(|n| n != first) {
            return Err(GeomError::MixedDimensions);
        }
    }
    Ok(set.into_iter().collect())
}

/// The direction set: every class spanned by a pair of distinct points.
/// Needs at least two distinct points.
pub fn direction_set(xs: &[RatPoint]) -> Result<BTreeSet<DirectionClass>, GeomError> {
    let xs = distinct_points(xs)?;
    if xs.len() < 2 {
        return Err(GeomError::TooFewPoints { required: 2, got: xs.len() });
    }
    let mut classes = BTreeSet::new();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i + 1..] {
            classes.insert(DirectionClass::between(x, y).expect("distinct points"));
        }
    }
    Ok(classes)
}

/// The number of lines in direction `theta` needed to cover `xs`; equals
/// the size of the orthogonal projection of `xs` along `theta`. The empty
/// set needs zero lines.
pub fn covering_count(xs: &[RatPoint], theta: &DirectionClass) -> Result<u64, GeomError> {
    let xs = distinct_points(xs)?;
    if let Some(first) = xs.first() {
        if first.n() != theta.n() {
            return Err(GeomError::MixedDimensions);
        }
    }
    let labels: BTreeSet<Vec<BigRational>> =
        xs.iter().map(|x| theta.projection_label(x)).collect();
    Ok(labels.len() as u64)
}

fn isqrt(m: u64) -> u64 {
    BigInt::from(m).sqrt().try_into().expect("root of a u64 fits")
}

fn sweep(xs: &[RatPoint], classes: &BTreeSet<DirectionClass>, s: u64) -> BTreeSet<DirectionClass> {
    classes
        .iter()
        .filter(|theta| covering_count(xs, theta).expect("classes come from the set") < s)
        .cloned()
        .collect()
}

fn skip_note(bound_id: &str, anchor: &str, reason: String) -> BoundReport {
    BoundReport::exact(bound_id, anchor, 0, BigRational::from(BigInt::from(0)), Tier::Tracked)
        .with_param("skipped", "precondition unmet")
        .with_param("reason", reason)
}

/// The directions along which fewer than `s` lines cover `xs`, with the
/// three standard size bounds.
///
/// Only spanned directions can have a covering count below `|X|`, so the
/// sweep over the finite direction set loses nothing. The first report
/// checks `|E_t(X)| <= 1` at the product-set threshold `t = floor(sqrt |X|)`
/// and blocks on failure. The other two record `|E_s(X)|` against `s` and
/// against `max(s^2 / |X|, 1)` for `s <= |X|/2`; both inequalities are
/// proved only up to unspecified constants, so these reports carry the
/// observed ratio as an empirical constant and never block. Out-of-range
/// `s` for those two produces a note report flagged `skipped`.
pub fn exceptional_directions(
    xs: &[RatPoint],
    s: u64,
) -> Result<(BTreeSet<DirectionClass>, [BoundReport; 3]), GeomError> {
    let xs = distinct_points(xs)?;
    if xs.len() < 2 {
        return Err(GeomError::TooFewPoints { required: 2, got: xs.len() });
    }
    let m = xs.len() as u64;
    if s < 1 || s > m {
        return Err(GeomError::OutOfRange(format!(
            "threshold must satisfy 1 <= s <= {m}, got {s}"
        )));
    }
    let classes = direction_set(&xs)?;
    let exceptional = sweep(&xs, &classes, s);

    let product_threshold = isqrt(m);
    let at_root = sweep(&xs, &classes, product_threshold);
    let product = BoundReport::exact(
        "exceptional_directions_product",
        "product-set exceptional direction bound",
        at_root.len() as u64,
        BigRational::from(BigInt::from(1)),
        Tier::Blocking,
    )
    .with_param("set_size", m)
    .with_param("s", product_threshold);

    let in_range = 2 * s <= m;
    let cs = if in_range {
        let lhs = exceptional.len() as u64;
        let rhs = ratio_u64(s, 1);
        let constant = decimal(&(BigRational::from(BigInt::from(lhs)) / &rhs), 6);
        BoundReport::exact(
            "exceptional_directions_cs",
            "Cauchy-Schwarz exceptional direction bound",
            lhs,
            rhs,
            Tier::Tracked,
        )
        .with_param("set_size", m)
        .with_param("s", s)
        .with_param("constant_status", "empirical")
        .with_param("empirical_constant", constant)
    } else {
        skip_note(
            "exceptional_directions_cs",
            "Cauchy-Schwarz exceptional direction bound",
            format!("needs s <= |X|/2, got s = {s}, |X| = {m}"),
        )
    };

    let st = if in_range {
        let lhs = exceptional.len() as u64;
        let rhs = std::cmp::max(
            BigRational::new(BigInt::from(s * s), BigInt::from(m)),
            BigRational::from(BigInt::from(1)),
        );
        let constant = decimal(&(BigRational::from(BigInt::from(lhs)) / &rhs), 6);
        BoundReport::exact(
            "exceptional_directions_st",
            "Szemeredi-Trotter exceptional direction bound",
            lhs,
            rhs,
            Tier::Tracked,
        )
        .with_param("set_size", m)
        .with_param("s", s)
        .with_param("constant_status", "empirical")
        .with_param("empirical_constant", constant)
    } else {
        skip_note(
            "exceptional_directions_st",
            "Szemeredi-Trotter exceptional direction bound",
            format!("needs s <= |X|/2, got s = {s}, |X| = {m}"),
        )
    };

    Ok((exceptional, [product, cs, st]))
}

/// The spanned lines meeting a set in exactly two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryLines {
    pub lines: BTreeSet<RatLine>,
    /// Set when the input was collinear, the one case with no ordinary
    /// line; `lines` is then empty and the theorem's hypothesis fails
    /// rather than its conclusion.
    pub collinear: bool,
}

/// All lines through exactly two points of `xs`, which needs at least three
/// distinct points. A noncollinear set always has one; that is a theorem,
/// and the implementation asserts it.
pub fn ordinary_lines(xs: &[RatPoint]) -> Result<OrdinaryLines, GeomError> {
    let xs = distinct_points(xs)?;
    if xs.len() < 3 {
        return Err(GeomError::TooFewPoints { required: 3, got: xs.len() });
    }
    let witness = RatLine::through(&xs[0], &xs[1]).expect("distinct points");
    if xs.iter().all(|x| witness.contains(x)) {
        return Ok(OrdinaryLines { lines: BTreeSet::new(), collinear: true });
    }
    let mut spanned = BTreeSet::new();
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i + 1..] {
            spanned.insert(RatLine::through(x, y).expect("distinct points"));
        }
    }
    let lines: BTreeSet<RatLine> = spanned
        .into_iter()
        .filter(|l| xs.iter().filter(|x| l.contains(x)).count() == 2)
        .collect();
    assert!(
        !lines.is_empty(),
        "a noncollinear set always spans an ordinary line; its absence is a bug"
    );
    Ok(OrdinaryLines { lines, collinear: false })
}

/// Check that a noncollinear planar set spans at least `|X| - 1` direction
/// classes. The count is exact and the bound is a theorem, so the report
/// blocks on failure.
pub fn ungar_report(xs: &[RatPoint]) -> Result<BoundReport, GeomError> {
    let xs = distinct_points(xs)?;
    if xs.len() < 3 {
        return Err(GeomError::TooFewPoints { required: 3, got: xs.len() });
    }
    if xs[0].n() != 2 {
        return Err(GeomError::NotPlanar { got: xs[0].n() });
    }
    let witness = RatLine::through(&xs[0], &xs[1]).expect("distinct points");
    if xs.iter().all(|x| witness.contains(x)) {
        return Err(GeomError::Collinear("a collinear set spans a single direction"));
    }
    let directions = direction_set(&xs)?;
    Ok(BoundReport::exact(
        "ungar_directions",
        "Ungar direction-count bound",
        xs.len() as u64 - 1,
        BigRational::from(BigInt::from(directions.len())),
        Tier::Blocking,
    )
    .with_param("set_size", xs.len())
    .with_param("directions", directions.len()))
}
