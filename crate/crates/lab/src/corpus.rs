//! Seeded point-set generators and the corpus file writer.
//!
//! The in-memory generators are shared with the experiment runner: every
//! experiment that draws random work items goes through one of them, so the
//! corpus a run sweeps and the corpus files `lab corpus` writes come from the
//! same code path. Generation is a pure function of the generator parameters
//! and the seed, which is what makes regeneration byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use geomlab::config::{ff_point_record, point_record, ConfigFile};
use geomlab::euclid::RatPoint;
use geomlab::ff::{example_fullgrid, example_subfield, FieldSpec, FpVec};
use geomlab::rng::{item_seed, Rng};

/// Number of points in `F_q^n`, refusing ambients larger than `cap`.
pub fn ambient_size(field: FieldSpec, n: usize, cap: u64) -> Result<u64> {
    let size = (field.q() as u128).pow(n as u32);
    ensure!(
        size <= cap as u128,
        "the ambient space has {size} points, over the enumeration cap {cap}"
    );
    Ok(size as u64)
}

/// `size` distinct uniform points of `F_q^n`, drawn by index sampling.
pub fn random_fp_points(
    rng: &mut Rng,
    field: FieldSpec,
    n: usize,
    size: u64,
    cap: u64,
) -> Result<Vec<FpVec>> {
    let ambient = ambient_size(field, n, cap)?;
    ensure!(size <= ambient, "cannot draw {size} distinct points from an ambient of {ambient}");
    Ok(rng
        .sample_distinct(ambient, size)
        .into_iter()
        .map(|i| FpVec::from_index(field, n, i))
        .collect())
}

/// `size` distinct lattice points of `[-range, range]^n`, sorted.
pub fn random_lattice_points(
    rng: &mut Rng,
    n: usize,
    size: u64,
    range: i64,
) -> Result<Vec<RatPoint>> {
    ensure!(n >= 2, "lattice points need dimension >= 2, got {n}");
    ensure!(range >= 0, "coordinate range must be nonnegative, got {range}");
    let capacity = (2 * range as u128 + 1).pow(n as u32);
    ensure!(
        size as u128 <= capacity,
        "cannot draw {size} distinct points from a lattice of {capacity}"
    );
    let mut points = BTreeSet::new();
    while (points.len() as u64) < size {
        let coords: Vec<i64> = (0..n).map(|_| rng.range_i64(-range, range)).collect();
        points.insert(RatPoint::from_integers(&coords).expect("n >= 2"));
    }
    Ok(points.into_iter().collect())
}

/// `size >= 3` distinct planar lattice points, redrawn until noncollinear.
pub fn random_noncollinear_points(rng: &mut Rng, size: u64, range: i64) -> Result<Vec<RatPoint>> {
    ensure!(size >= 3, "a noncollinear set needs at least 3 points, got {size}");
    for _ in 0..1_000 {
        let points = random_lattice_points(rng, 2, size, range)?;
        if !collinear(&points) {
            return Ok(points);
        }
    }
    bail!("could not draw a noncollinear set of {size} points with range {range}");
}

fn collinear(points: &[RatPoint]) -> bool {
    use geomlab::euclid::RatLine;
    let witness = RatLine::through(&points[0], &points[1]).expect("distinct sorted points");
    points.iter().all(|p| witness.contains(p))
}

/// `on_line` collinear points plus `size - on_line` points off that line,
/// all distinct. The line and the noise are drawn from `rng`.
pub fn line_plus_noise_points(
    rng: &mut Rng,
    size: u64,
    on_line: u64,
    range: i64,
) -> Result<Vec<RatPoint>> {
    ensure!(on_line >= 2, "need at least 2 points to pin the line, got {on_line}");
    ensure!(on_line <= size, "on-line count {on_line} exceeds the set size {size}");
    ensure!(range >= 1, "coordinate range must be at least 1, got {range}");
    let anchor = [rng.range_i64(-range, range), rng.range_i64(-range, range)];
    let step = loop {
        let d = [rng.range_i64(-3, 3), rng.range_i64(-3, 3)];
        if d != [0, 0] {
            break d;
        }
    };
    let mut points = BTreeSet::new();
    for k in 0..on_line as i64 {
        let p = RatPoint::from_integers(&[anchor[0] + k * step[0], anchor[1] + k * step[1]])
            .expect("two coordinates");
        points.insert(p);
    }
    let carrier =
        geomlab::euclid::RatLine::from_point_direction(
            &RatPoint::from_integers(&anchor).expect("two coordinates"),
            &[BigRational::from_integer(step[0].into()), BigRational::from_integer(step[1].into())],
        )
        .expect("nonzero step");
    let mut attempts = 0;
    while (points.len() as u64) < size {
        attempts += 1;
        ensure!(
            attempts <= 100_000,
            "could not place {} off-line points with range {range}",
            size - on_line
        );
        let p = RatPoint::from_integers(&[rng.range_i64(-range, range), rng.range_i64(-range, range)])
            .expect("two coordinates");
        if !carrier.contains(&p) {
            points.insert(p);
        }
    }
    Ok(points.into_iter().collect())
}

/// The full `rows x cols` integer grid `[0, rows) x [0, cols)`.
pub fn grid_points(rows: u64, cols: u64) -> Result<Vec<RatPoint>> {
    ensure!(rows >= 1 && cols >= 1, "grid sides must be positive, got {rows} x {cols}");
    let mut points = Vec::with_capacity((rows * cols) as usize);
    for x in 0..rows {
        for y in 0..cols {
            points.push(RatPoint::from_integers(&[x as i64, y as i64]).expect("two coordinates"));
        }
    }
    Ok(points)
}

fn fraction(spec: &ConfigFile, key: &'static str) -> Result<BigRational> {
    let text = spec.require(key)?;
    text.parse().with_context(|| format!("key `{key}`: bad fraction `{text}`"))
}

/// Generate the corpus files described by `spec` as (file name, content)
/// pairs, without touching the filesystem.
pub fn generate(spec: &ConfigFile, seed: u64, cap: u64) -> Result<Vec<(String, String)>> {
    let generator = spec.require("generator")?;
    let count = spec.get_u64("count")?.unwrap_or(1);
    ensure!(count >= 1, "key `count`: need at least one file, got 0");
    let mut files = Vec::with_capacity(count as usize);
    for item in 0..count {
        let mut rng = Rng::new(item_seed(seed, item));
        let mut body = String::new();
        writeln!(body, "# corpus item {item} of {count}, master seed {seed}")
            .expect("string writes are infallible");
        if let Some(experiment) = spec.get("experiment") {
            writeln!(body, "experiment = {experiment}").expect("string writes are infallible");
        }
        match generator {
            "uniform_random_fp" => {
                let p = spec.require_u64("p")?;
                let n = spec.require_u64("n")? as usize;
                let size = spec.require_u64("size")?;
                let field = FieldSpec::prime(p).context("key `p`")?;
                let points = random_fp_points(&mut rng, field, n, size, cap)?;
                writeln!(body, "p = {p}\nn = {n}").expect("string writes are infallible");
                for v in &points {
                    writeln!(body, "{}", ff_point_record(v.coords()))
                        .expect("string writes are infallible");
                }
            }
            "uniform_random_lattice" => {
                let size = spec.require_u64("size")?;
                let n = spec.get_u64("n")?.unwrap_or(2) as usize;
                let range = range_param(spec, 12)?;
                for p in random_lattice_points(&mut rng, n, size, range)? {
                    writeln!(body, "{}", point_record(&p)).expect("string writes are infallible");
                }
            }
            "line_plus_noise" => {
                let size = spec.require_u64("size")?;
                let range = range_param(spec, 12)?;
                let on_line = match spec.get("on_line") {
                    None => size.div_ceil(2).max(2),
                    Some(_) => {
                        let f = fraction(spec, "on_line")?;
                        ensure!(
                            f.is_positive() && f <= BigRational::from_integer(1.into()),
                            "key `on_line`: fraction must lie in (0, 1], got {f}"
                        );
                        (f * BigRational::from_integer(size.into()))
                            .floor()
                            .to_integer()
                            .to_u64()
                            .expect("0 <= on_line * size <= size")
                    }
                };
                for p in line_plus_noise_points(&mut rng, size, on_line, range)? {
                    writeln!(body, "{}", point_record(&p)).expect("string writes are infallible");
                }
            }
            "grid" => {
                let rows = spec.require_u64("rows")?;
                let cols = spec.require_u64("cols")?;
                for p in grid_points(rows, cols)? {
                    writeln!(body, "{}", point_record(&p)).expect("string writes are infallible");
                }
            }
            "named" => {
                let name = spec.require("name")?;
                let p = spec.require_u64("p")?;
                let points = match name {
                    "subfield" => {
                        let (points, _) = example_subfield(p, cap).context("key `p`")?;
                        writeln!(body, "p = {p}\nr = 2\nn = 2")
                            .expect("string writes are infallible");
                        points
                    }
                    "fullgrid" => {
                        let (points, _, _) = example_fullgrid(p, cap).context("key `p`")?;
                        writeln!(body, "p = {p}\nn = 2").expect("string writes are infallible");
                        points
                    }
                    other => bail!("key `name`: unknown example `{other}`"),
                };
                for v in &points {
                    writeln!(body, "{}", ff_point_record(v.coords()))
                        .expect("string writes are infallible");
                }
            }
            other => bail!(
                "key `generator`: unknown generator `{other}` (expected uniform_random_fp, \
                 uniform_random_lattice, line_plus_noise, grid, or named)"
            ),
        }
        files.push((format!("{generator}-{item:03}.cfg"), body));
    }
    Ok(files)
}

fn range_param(spec: &ConfigFile, default: i64) -> Result<i64> {
    let range = spec.get_u64("range")?.unwrap_or(default as u64);
    ensure!(range <= i64::MAX as u64, "key `range`: {range} is too large");
    Ok(range as i64)
}
