//! Incidence counting between points and lines, rich objects, point-line
//! duality, and incidence-preserving reduction to the plane.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::line::RatLine;
use super::point::{rat, RatPoint};
use super::GeomError;
use crate::report::{nth_root_enclosure, BoundReport, Tier};
use crate::rng::Rng;

/// Exact incidence counts for a point set against a line set.
///
/// `total` equals the sum over `per_line` and the sum over `per_point`;
/// both maps carry every input object, including those with count zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceTally {
    pub total: u64,
    pub per_line: BTreeMap<RatLine, u64>,
    pub per_point: BTreeMap<RatPoint, u64>,
}

fn dedup_points(points: &[RatPoint]) -> Result<BTreeSet<RatPoint>, GeomError> {
    let set: BTreeSet<RatPoint> = points.iter().cloned().collect();
    let mut dims = set.iter().map(RatPoint::n);
    if let Some(first) = dims.next() {
        if dims.any(|n| n != first) {
            return Err(GeomError::MixedDimensions);
        }
    }
    Ok(set)
}

fn dedup_lines(lines: &[RatLine]) -> Result<BTreeSet<RatLine>, GeomError> {
    let set: BTreeSet<RatLine> = lines.iter().cloned().collect();
    let mut dims = set.iter().map(RatLine::n);
    if let Some(first) = dims.next() {
        if dims.any(|n| n != first) {
            return Err(GeomError::MixedDimensions);
        }
    }
    Ok(set)
}

/// Count the incidences between `points` and `lines` by exact membership.
///
/// Duplicated inputs are collapsed first. All points and lines must share
/// one ambient dimension.
pub fn incidences(points: &[RatPoint], lines: &[RatLine]) -> Result<IncidenceTally, GeomError> {
    let points = dedup_points(points)?;
    let lines = dedup_lines(lines)?;
    match (points.iter().next(), lines.iter().next()) {
        (Some(p), Some(l)) if p.n() != l.n() => return Err(GeomError::MixedDimensions),
        _ => {}
    }
    let mut per_line: BTreeMap<RatLine, u64> =
        lines.iter().map(|l| (l.clone(), 0)).collect();
    let mut per_point: BTreeMap<RatPoint, u64> =
        points.iter().map(|p| (p.clone(), 0)).collect();
    let mut total = 0u64;
    for l in &lines {
        for p in &points {
            if l.contains(p) {
                total += 1;
                *per_line.get_mut(l).expect("present") += 1;
                *per_point.get_mut(p).expect("present") += 1;
            }
        }
    }
    Ok(IncidenceTally { total, per_line, per_point })
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Decide `i <= a * sqrt(b) + b` exactly in integer arithmetic.
fn cs_side_holds(i: u64, a: u64, b: u64) -> bool {
    if i <= b {
        return true;
    }
    let excess = big(i) - big(b);
    excess.pow(2) <= big(a).pow(2) * big(b)
}

/// Enclose `a * sqrt(b) + b` by rationals.
fn cs_side_enclosure(a: u64, b: u64, places: u32) -> (BigRational, BigRational) {
    let (lo, hi) = nth_root_enclosure(&big(b), 2, places);
    let shift = BigRational::from(big(b));
    let factor = BigRational::from(big(a));
    (&factor * lo + &shift, factor * hi + shift)
}

/// The smaller of the two Cauchy-Schwarz sides as an enclosure.
///
/// The sides are `|P| sqrt(|L|) + |L|` and `|L| sqrt(|P|) + |P|`. For
/// `|P| != |L|` they are never equal (their difference is a nonzero element
/// of `Q(sqrt(|P|), sqrt(|L|))`), so refining the enclosures always
/// separates them.
fn cs_min_enclosure(np: u64, nl: u64) -> (BigRational, BigRational) {
    if np == nl {
        return cs_side_enclosure(np, nl, 12);
    }
    let mut places = 12;
    loop {
        let a = cs_side_enclosure(np, nl, places);
        let b = cs_side_enclosure(nl, np, places);
        if a.0 == a.1 && b.0 == b.1 {
            return if a.0 <= b.0 { a } else { b };
        }
        if a.1 < b.0 {
            return a;
        }
        if b.1 < a.0 {
            return b;
        }
        places *= 2;
        assert!(places <= 3072, "enclosures failed to separate distinct sides");
    }
}

/// Check the two incidence upper bounds on a configuration and report both.
///
/// The first report checks the double-counting bound
/// `|I| <= min(|P| sqrt(|L|) + |L|, |L| sqrt(|P|) + |P|)`; the second checks
/// `|I| <= 4 (|P|^(2/3) |L|^(2/3) + |P| + |L|)`. Both decisions are made in
/// exact integer arithmetic by comparing squares or cubes of rearranged
/// sides; the stored right sides are rational enclosures consistent with
/// each decision. Both are theorems, so the reports are blocking: a
/// violation means an implementation bug.
pub fn bound_report_cs_st(
    points: &[RatPoint],
    lines: &[RatLine],
) -> Result<(BoundReport, BoundReport), GeomError> {
    let tally = incidences(points, lines)?;
    let np = tally.per_point.len() as u64;
    let nl = tally.per_line.len() as u64;
    let i = tally.total;

    let cs_holds = cs_side_holds(i, np, nl) && cs_side_holds(i, nl, np);
    let cs = BoundReport::with_decided(
        "incidence_cauchy_schwarz",
        "Cauchy-Schwarz incidence bound",
        i,
        cs_holds,
        cs_min_enclosure(np, nl),
        Tier::Blocking,
    )
    .with_param("points", np)
    .with_param("lines", nl);

    let st_holds = {
        let slack = big(i) - big(4) * (big(np) + big(nl));
        !slack.is_positive() || slack.pow(3) <= big(64) * (big(np) * big(nl)).pow(2)
    };
    let st_enclosure = {
        let (lo, hi) = nth_root_enclosure(&(big(np) * big(nl)).pow(2), 3, 12);
        let shift = BigRational::from(big(np) + big(nl));
        let four = BigRational::from(big(4));
        (&four * (lo + &shift), four * (hi + shift))
    };
    let st = BoundReport::with_decided(
        "incidence_szemeredi_trotter",
        "Szemeredi-Trotter incidence bound",
        i,
        st_holds,
        st_enclosure,
        Tier::Blocking,
    )
    .with_param("points", np)
    .with_param("lines", nl);

    Ok((cs, st))
}

/// All points lying on at least `r` lines of `lines`, `r >= 2`.
pub fn rich_points(lines: &[RatLine], r: u64) -> Result<BTreeSet<RatPoint>, GeomError> {
    if r < 2 {
        return Err(GeomError::OutOfRange(format!("richness threshold must be >= 2, got {r}")));
    }
    let lines: Vec<RatLine> = dedup_lines(lines)?.into_iter().collect();
    let mut candidates = BTreeSet::new();
    for (idx, a) in lines.iter().enumerate() {
        for b in &lines[idx + 1..] {
            if let Some(p) = a.intersect(b) {
                candidates.insert(p);
            }
        }
    }
    Ok(candidates
        .into_iter()
        .filter(|p| lines.iter().filter(|l| l.contains(p)).count() as u64 >= r)
        .collect())
}

/// All lines containing at least `r` points of `points`, `r >= 2`.
pub fn rich_lines(points: &[RatPoint], r: u64) -> Result<BTreeSet<RatLine>, GeomError> {
    if r < 2 {
        return Err(GeomError::OutOfRange(format!("richness threshold must be >= 2, got {r}")));
    }
    let points: Vec<RatPoint> = dedup_points(points)?.into_iter().collect();
    let mut spanned = BTreeSet::new();
    for (idx, p) in points.iter().enumerate() {
        for q in &points[idx + 1..] {
            spanned.insert(RatLine::through(p, q).expect("deduped points are distinct"));
        }
    }
    Ok(spanned
        .into_iter()
        .filter(|l| points.iter().filter(|p| l.contains(p)).count() as u64 >= r)
        .collect())
}

/// The dual line of a planar point `p`: `y = p_1 x - p_2`.
pub fn dualize(p: &RatPoint) -> Result<RatLine, GeomError> {
    if p.n() != 2 {
        return Err(GeomError::NotPlanar { got: p.n() });
    }
    let m = p.coords()[0].clone();
    let b = -p.coords()[1].clone();
    Ok(RatLine::from_slope_intercept(&m, &b))
}

/// The dual point of a nonvertical planar line `y = m x + b`: `(m, -b)`.
///
/// `p` lies on `l` exactly when `dualize_line(l)` lies on `dualize(p)`, and
/// the two maps invert each other.
pub fn dualize_line(l: &RatLine) -> Result<RatPoint, GeomError> {
    let (m, b) = l.slope_intercept()?;
    Ok(RatPoint::new(vec![m, -b]).expect("two coordinates"))
}

/// A planar configuration after the shear `(x, y) -> (x + t y, y)`.
#[derive(Debug, Clone)]
pub struct ShearedPlane {
    pub points: Vec<RatPoint>,
    pub lines: Vec<RatLine>,
    /// The shear parameter applied.
    pub t: BigRational,
}

fn shear_point(p: &RatPoint, t: &BigRational) -> RatPoint {
    let c = p.coords();
    RatPoint::new(vec![&c[0] + &c[1] * t, c[1].clone()]).expect("two coordinates")
}

fn shear_line(l: &RatLine, t: &BigRational) -> RatLine {
    let d = l.direction();
    let sheared_dir = [&d[0] + &d[1] * t, d[1].clone()];
    RatLine::from_point_direction(&shear_point(l.base(), t), &sheared_dir)
        .expect("invertible shears keep directions nonzero")
}

/// Apply a seeded shear that eliminates vertical lines.
///
/// The shear `(x, y) -> (x + t y, y)` is invertible, so it preserves
/// distinctness and every incidence. A line is vertical after the shear
/// only when `t` hits one forbidden value per nonhorizontal line, so small
/// seeded integers are retried until none is hit.
pub fn shear_planar(
    points: &[RatPoint],
    lines: &[RatLine],
    seed: u64,
) -> Result<ShearedPlane, GeomError> {
    if points.iter().any(|p| p.n() != 2) || lines.iter().any(|l| l.n() != 2) {
        let got = points
            .iter()
            .map(RatPoint::n)
            .chain(lines.iter().map(RatLine::n))
            .find(|&n| n != 2)
            .unwrap_or(2);
        return Err(GeomError::NotPlanar { got });
    }
    let mut rng = Rng::new(seed);
    const ATTEMPTS: u32 = 64;
    for _ in 0..ATTEMPTS {
        let t = rat(1 + rng.below(64 + lines.len() as u64) as i64);
        let sheared: Vec<RatLine> = lines.iter().map(|l| shear_line(l, &t)).collect();
        if sheared.iter().any(RatLine::is_vertical) {
            continue;
        }
        return Ok(ShearedPlane {
            points: points.iter().map(|p| shear_point(p, &t)).collect(),
            lines: sheared,
            t,
        });
    }
    Err(GeomError::RetryLimit { attempts: ATTEMPTS })
}

fn apply_matrix(m: &[Vec<BigRational>; 2], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Project a configuration in `Q^n`, `n >= 3`, to the plane through a
/// seeded rational linear map that preserves the number of points, the
/// number of lines, and the incidence tally. Planar input is returned
/// unchanged. Output order mirrors input order.
///
/// Linear maps never destroy incidences, so preserving the total rules out
/// the creation of new ones; candidate maps are rejection-sampled until the
/// counts match.
pub fn generic_project(
    points: &[RatPoint],
    lines: &[RatLine],
    seed: u64,
) -> Result<(Vec<RatPoint>, Vec<RatLine>), GeomError> {
    let distinct_points = dedup_points(points)?;
    let distinct_lines = dedup_lines(lines)?;
    let n = match (distinct_points.iter().next(), distinct_lines.iter().next()) {
        (Some(p), Some(l)) if p.n() != l.n() => return Err(GeomError::MixedDimensions),
        (Some(p), _) => p.n(),
        (None, Some(l)) => l.n(),
        (None, None) => return Ok((Vec::new(), Vec::new())),
    };
    if n == 2 {
        return Ok((points.to_vec(), lines.to_vec()));
    }
    let before = incidences(points, lines)?.total;
    let mut rng = Rng::new(seed);
    const ATTEMPTS: u32 = 64;
    for _ in 0..ATTEMPTS {
        let matrix: [Vec<BigRational>; 2] = std::array::from_fn(|_| {
            (0..n).map(|_| rat(rng.range_i64(-16, 16))).collect()
        });
        let project_point = |p: &RatPoint| {
            RatPoint::new(apply_matrix(&matrix, p.coords())).expect("two coordinates")
        };
        let image_lines: Option<Vec<RatLine>> = lines
            .iter()
            .map(|l| {
                RatLine::from_point_direction(
                    &project_point(l.base()),
                    &apply_matrix(&matrix, l.direction()),
                )
                .ok()
            })
            .collect();
        let Some(image_lines) = image_lines else { continue };
        let image_points: Vec<RatPoint> = points.iter().map(project_point).collect();
        let distinct_after: BTreeSet<&RatPoint> = image_points.iter().collect();
        if distinct_after.len() != distinct_points.len() {
            continue;
        }
        let lines_after: BTreeSet<&RatLine> = image_lines.iter().collect();
        if lines_after.len() != distinct_lines.len() {
            continue;
        }
        if incidences(&image_points, &image_lines)?.total != before {
            continue;
        }
        return Ok((image_points, image_lines));
    }
    Err(GeomError::RetryLimit { attempts: ATTEMPTS })
}
